import type { CurveStyle } from "./defaults";

/** One drawn curve: either a solve result or loaded experimental data. */
export interface Curve {
  label: string;
  style: CurveStyle;
  source: "solve" | "data";
  t: number[];
  u: number[];
}

/** Curves accumulate across plots and loads until Clear. */
export class PlotState {
  private readonly items: Curve[] = [];

  get curves(): readonly Curve[] {
    return this.items;
  }

  get size(): number {
    return this.items.length;
  }

  /** Newest solve curve, used by Save for the CSV download. */
  get activeCurve(): Curve | null {
    for (let i = this.items.length - 1; i >= 0; i--) {
      if (this.items[i].source === "solve") return this.items[i];
    }
    return this.items.length ? this.items[this.items.length - 1] : null;
  }

  addCurve(curve: Curve): void {
    this.items.push(curve);
  }

  clear(): void {
    this.items.length = 0;
  }

  /** Joint axis ranges over every stored curve. */
  ranges(): { t: [number, number]; u: [number, number] } {
    if (!this.items.length) {
      return { t: [0, 1], u: [0, 1] };
    }
    let tLo = Infinity, tHi = -Infinity, uLo = Infinity, uHi = -Infinity;
    for (const c of this.items) {
      for (const v of c.t) {
        if (v < tLo) tLo = v;
        if (v > tHi) tHi = v;
      }
      for (const v of c.u) {
        if (v < uLo) uLo = v;
        if (v > uHi) uHi = v;
      }
    }
    if (tHi <= tLo) tHi = tLo + 1;
    if (uHi <= uLo) {
      const pad = Math.max(1, Math.abs(uHi)) * 0.5;
      uLo -= pad;
      uHi += pad;
    }
    return { t: [tLo, tHi], u: [uLo, uHi] };
  }
}
