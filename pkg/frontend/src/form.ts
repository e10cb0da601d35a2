import {
  CurveStyle,
  LineStyle,
  MarkerStyle,
  PARAM_DEFAULTS,
  ProblemParams,
  STYLE_DEFAULTS,
  SolveMethod,
} from "./defaults";

export class FormError extends Error {}

const NUMERIC_FIELDS = ["alpha", "coeff", "dt", "duration", "y0", "yp0"] as const;

/** Reads and writes the parameter panel; owns client-side validation. */
export class ParameterForm {
  constructor(private readonly root: Document | HTMLElement = document) {}

  private input(name: string): HTMLInputElement | HTMLSelectElement {
    const el = this.root.querySelector<HTMLInputElement | HTMLSelectElement>(`[name="${name}"]`);
    if (!el) throw new FormError(`missing form field ${name}`);
    return el;
  }

  reset(): void {
    for (const field of NUMERIC_FIELDS) {
      this.input(field).value = String(PARAM_DEFAULTS[field]);
    }
    this.input("forcing").value = PARAM_DEFAULTS.forcing;
    this.input("method").value = "pece";
    this.input("color").value = STYLE_DEFAULTS.color;
    this.input("line").value = STYLE_DEFAULTS.line;
    this.input("marker").value = STYLE_DEFAULTS.marker;
  }

  params(): ProblemParams {
    const out = {} as Record<string, number | string>;
    for (const field of NUMERIC_FIELDS) {
      const raw = this.input(field).value.trim();
      const value = Number(raw);
      if (raw === "" || !Number.isFinite(value)) {
        throw new FormError(`field "${field}" must be a number, got "${raw}"`);
      }
      out[field] = value;
    }
    const alpha = out.alpha as number;
    if (!(alpha > 0 && alpha <= 2)) {
      throw new FormError(`fractional order alpha = ${alpha} must lie within (0, 2]`);
    }
    out.forcing = this.input("forcing").value.trim() || "0";
    return out as unknown as ProblemParams;
  }

  method(): SolveMethod {
    return this.input("method").value === "analytic" ? "analytic" : "pece";
  }

  style(): CurveStyle {
    return {
      color: this.input("color").value || STYLE_DEFAULTS.color,
      line: this.input("line").value as LineStyle,
      marker: this.input("marker").value as MarkerStyle,
    };
  }

  /** Legend text derived from the parameters, like "alpha=0.7 A=1 f=0". */
  legendLabel(params: ProblemParams, method: SolveMethod): string {
    const f = params.forcing === "0" ? "" : ` f=${params.forcing}`;
    const tag = method === "analytic" ? " (analytic)" : "";
    return `alpha=${params.alpha} A=${params.coeff} y0=${params.y0}${f}${tag}`;
  }
}
