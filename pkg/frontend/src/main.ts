import { solve, ApiError } from "./api";
import { renderChart } from "./chart";
import { parseSeriesCsv, CsvError } from "./csv";
import { STYLE_DEFAULTS } from "./defaults";
import { FormError, ParameterForm } from "./form";
import { PlotState } from "./state";

/** Wires the page: one PlotState, one form, five buttons, one error modal. */
export class App {
  readonly state = new PlotState();
  readonly form: ParameterForm;
  private pending = false;

  constructor(
    private readonly doc: Document = document,
    private readonly fetchImpl: typeof fetch = fetch,
  ) {
    this.form = new ParameterForm(doc);
  }

  // ----- dialog -------------------------------------------------------

  showError(message: string): void {
    const dialog = this.doc.getElementById("error-dialog")!;
    const text = this.doc.getElementById("error-message")!;
    text.textContent = message;
    dialog.classList.add("open");
  }

  hideError(): void {
    this.doc.getElementById("error-dialog")!.classList.remove("open");
  }

  get errorVisible(): boolean {
    return this.doc.getElementById("error-dialog")!.classList.contains("open");
  }

  // ----- actions ------------------------------------------------------

  async plotAction(): Promise<void> {
    if (this.pending) return;
    let params, method, style, label;
    try {
      params = this.form.params();
      method = this.form.method();
      style = this.form.style();
      label = this.form.legendLabel(params, method);
    } catch (err) {
      if (err instanceof FormError) {
        this.showError(err.message);
        return;
      }
      throw err;
    }
    this.pending = true;
    this.setPlotEnabled(false);
    try {
      const doc = await solve(params, method, this.fetchImpl);
      this.state.addCurve({
        label,
        style,
        source: "solve",
        t: doc.t,
        u: doc.u,
      });
      this.redraw();
    } catch (err) {
      if (err instanceof ApiError) {
        this.showError(err.message);
      } else {
        this.showError(`request failed: ${String(err)}`);
      }
    } finally {
      this.pending = false;
      this.setPlotEnabled(true);
    }
  }

  loadAction(text: string, label = "data"): void {
    try {
      const series = parseSeriesCsv(text, label);
      this.state.addCurve({
        label: series.label,
        style: { color: "#2060c0", line: "solid", marker: "plus" },
        source: "data",
        t: series.times,
        u: series.values,
      });
      this.redraw();
    } catch (err) {
      if (err instanceof CsvError) {
        this.showError(err.message);
        return;
      }
      throw err;
    }
  }

  clearAction(): void {
    this.state.clear();
    this.redraw();
  }

  resetAction(): void {
    this.form.reset();
  }

  saveAction(): { svg: string; csv: string | null } | null {
    if (this.state.size === 0) return null;
    const svg = renderChart(this.state);
    const active = this.state.activeCurve;
    let csv: string | null = null;
    if (active) {
      const rows = active.t.map((t, i) => `${fmt17(t)},${fmt17(active.u[i])}`);
      csv = "time,value\n" + rows.join("\n") + "\n";
    }
    this.download("chart.svg", svg, "image/svg+xml");
    if (csv !== null) this.download("curve.csv", csv, "text/csv");
    return { svg, csv };
  }

  // ----- rendering ----------------------------------------------------

  redraw(): void {
    const host = this.doc.getElementById("chart")!;
    host.innerHTML = this.state.size ? renderChart(this.state) : placeholder();
    this.updateSaveEnabled();
  }

  private setPlotEnabled(enabled: boolean): void {
    const btn = this.doc.getElementById("btn-plot") as HTMLButtonElement | null;
    if (btn) btn.disabled = !enabled;
  }

  private updateSaveEnabled(): void {
    const btn = this.doc.getElementById("btn-save") as HTMLButtonElement | null;
    if (btn) btn.disabled = this.state.size === 0;
  }

  private download(filename: string, content: string, mime: string): void {
    const url = URL.createObjectURL(new Blob([content], { type: mime }));
    const a = this.doc.createElement("a");
    a.href = url;
    a.download = filename;
    this.doc.body.appendChild(a);
    a.click();
    a.remove();
    URL.revokeObjectURL(url);
  }

  bind(): void {
    this.doc.getElementById("btn-plot")!.addEventListener("click", () => {
      void this.plotAction();
    });
    this.doc.getElementById("btn-clear")!.addEventListener("click", () => this.clearAction());
    this.doc.getElementById("btn-reset")!.addEventListener("click", () => this.resetAction());
    this.doc.getElementById("btn-save")!.addEventListener("click", () => this.saveAction());
    this.doc.getElementById("error-close")!.addEventListener("click", () => this.hideError());
    const fileInput = this.doc.getElementById("file-input") as HTMLInputElement;
    fileInput.addEventListener("change", () => {
      const file = fileInput.files?.[0];
      if (!file) return;
      void file.text().then((text) => {
        this.loadAction(text, file.name.replace(/\.csv$/i, ""));
        fileInput.value = "";
      });
    });
    this.form.reset();
    this.redraw();
  }
}

function fmt17(v: number): string {
  const text = v.toPrecision(17);
  return Number(text) === v ? text : String(v);
}

function placeholder(): string {
  return '<p class="placeholder">No curves yet. Set parameters and press Plot.</p>';
}

declare global {
  interface Window {
    froApp?: App;
  }
}

if (typeof window !== "undefined" && typeof document !== "undefined" && document.getElementById("btn-plot")) {
  const app = new App(document, fetch.bind(window));
  app.bind();
  window.froApp = app;
}

export { STYLE_DEFAULTS };
