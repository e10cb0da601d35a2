/** Standard parameter values; Reset restores exactly these. */
export interface ProblemParams {
  alpha: number;
  coeff: number;
  dt: number;
  duration: number;
  y0: number;
  yp0: number;
  forcing: string;
}

export const PARAM_DEFAULTS: ProblemParams = {
  alpha: 0.5,
  coeff: 1,
  dt: 0.1,
  duration: 10,
  y0: 0,
  yp0: 0,
  forcing: "0",
};

export type LineStyle = "solid" | "dashed" | "dotted";
export type MarkerStyle = "none" | "plus" | "circle";

export interface CurveStyle {
  color: string;
  line: LineStyle;
  marker: MarkerStyle;
}

export const STYLE_DEFAULTS: CurveStyle = {
  color: "#c03030",
  line: "solid",
  marker: "none",
};

export type SolveMethod = "pece" | "analytic";
