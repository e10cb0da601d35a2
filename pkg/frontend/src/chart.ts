import type { Curve, PlotState } from "./state";

const WIDTH = 840;
const HEIGHT = 520;
const MARGIN = 58;

const DASH: Record<string, string> = {
  solid: "",
  dashed: "8,5",
  dotted: "2,4",
};

function niceTicks(lo: number, hi: number, n = 6): number[] {
  if (hi <= lo) hi = lo + 1;
  const raw = (hi - lo) / n;
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  let step = 10 * mag;
  for (const mult of [1, 2, 2.5, 5, 10]) {
    if (raw <= mult * mag) {
      step = mult * mag;
      break;
    }
  }
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + 1e-12 * Math.abs(hi); v += step) {
    ticks.push(Math.abs(v) < 1e-15 ? 0 : v);
  }
  return ticks;
}

function fmt(v: number): string {
  return Number(v.toPrecision(6)).toString();
}

/** Render every stored curve into a standalone SVG document string. */
export function renderChart(state: PlotState): string {
  const { t: [tLo, tHi], u: [uLoRaw, uHiRaw] } = state.ranges();
  const pad = 0.05 * (uHiRaw - uLoRaw);
  const uLo = uLoRaw - pad;
  const uHi = uHiRaw + pad;
  const innerW = WIDTH - 2 * MARGIN;
  const innerH = HEIGHT - 2 * MARGIN;
  const sx = (x: number) => MARGIN + ((x - tLo) / (tHi - tLo)) * innerW;
  const sy = (y: number) => HEIGHT - MARGIN - ((y - uLo) / (uHi - uLo)) * innerH;

  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">`,
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`,
    `<rect x="${MARGIN}" y="${MARGIN}" width="${innerW}" height="${innerH}" fill="none" stroke="#333"/>`,
  ];
  for (const tick of niceTicks(tLo, tHi)) {
    const x = sx(tick);
    parts.push(`<line x1="${x.toFixed(1)}" y1="${HEIGHT - MARGIN}" x2="${x.toFixed(1)}" y2="${HEIGHT - MARGIN + 5}" stroke="#333"/>`);
    parts.push(`<text x="${x.toFixed(1)}" y="${HEIGHT - MARGIN + 18}" text-anchor="middle" font-size="11" font-family="sans-serif">${fmt(tick)}</text>`);
  }
  for (const tick of niceTicks(uLo, uHi)) {
    const y = sy(tick);
    parts.push(`<line x1="${MARGIN - 5}" y1="${y.toFixed(1)}" x2="${MARGIN}" y2="${y.toFixed(1)}" stroke="#333"/>`);
    parts.push(`<text x="${MARGIN - 8}" y="${(y + 4).toFixed(1)}" text-anchor="end" font-size="11" font-family="sans-serif">${fmt(tick)}</text>`);
  }
  if (uLo < 0 && uHi > 0) {
    const y = sy(0);
    parts.push(`<line class="axis-zero" x1="${MARGIN}" y1="${y.toFixed(2)}" x2="${WIDTH - MARGIN}" y2="${y.toFixed(2)}" stroke="#999" stroke-dasharray="4,3"/>`);
  }

  state.curves.forEach((curve, index) => {
    parts.push(renderCurve(curve, sx, sy, index));
  });

  // legend, top-right corner of the plot area
  state.curves.forEach((curve, index) => {
    const y = MARGIN + 16 + index * 16;
    const x = WIDTH - MARGIN - 180;
    parts.push(`<line x1="${x}" y1="${y - 4}" x2="${x + 26}" y2="${y - 4}" stroke="${curve.style.color}" stroke-width="2"${DASH[curve.style.line] ? ` stroke-dasharray="${DASH[curve.style.line]}"` : ""}/>`);
    parts.push(`<text x="${x + 32}" y="${y}" font-size="11" font-family="sans-serif">${escapeXml(curve.label)}</text>`);
  });
  parts.push("</svg>");
  return parts.join("\n");
}

function renderCurve(
  curve: Curve,
  sx: (x: number) => number,
  sy: (y: number) => number,
  index: number,
): string {
  const bits: string[] = [`<g class="curve" data-label="${escapeXml(curve.label)}" data-index="${index}">`];
  const c = curve.style.color;
  if (curve.source === "solve" || curve.style.marker === "none") {
    const pts = curve.t.map((x, i) => `${sx(x).toFixed(2)},${sy(curve.u[i]).toFixed(2)}`).join(" ");
    const dash = DASH[curve.style.line] ? ` stroke-dasharray="${DASH[curve.style.line]}"` : "";
    bits.push(`<polyline fill="none" stroke="${c}" stroke-width="1.6"${dash} points="${pts}"/>`);
  }
  if (curve.style.marker === "plus") {
    for (let i = 0; i < curve.t.length; i++) {
      const x = sx(curve.t[i]);
      const y = sy(curve.u[i]);
      bits.push(`<path class="marker" d="M ${(x - 4).toFixed(2)} ${y.toFixed(2)} H ${(x + 4).toFixed(2)} M ${x.toFixed(2)} ${(y - 4).toFixed(2)} V ${(y + 4).toFixed(2)}" stroke="${c}" fill="none"/>`);
    }
  } else if (curve.style.marker === "circle") {
    for (let i = 0; i < curve.t.length; i++) {
      bits.push(`<circle class="marker" cx="${sx(curve.t[i]).toFixed(2)}" cy="${sy(curve.u[i]).toFixed(2)}" r="3.5" stroke="${c}" fill="none"/>`);
    }
  }
  bits.push("</g>");
  return bits.join("\n");
}

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}
