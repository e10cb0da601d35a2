"""HTTP/JSON API over the solver, analytic oracle, data fitting, and SVG plots.

Routes
------
POST /api/solve   solve one problem (PECE or analytic), JSON in/out
POST /api/fit     grid fit of an inline data series, JSON in/out
GET  /api/plot    solve and render the trajectory as an SVG line plot
GET  /api/health  liveness probe

Request fields mirror the CLI flags; absent fields take the same defaults.
Static files (the browser UI bundle, when built) are served at ``/``.

Configuration comes from ``create_app`` arguments or environment variables:
``FRO_N_CAP`` (max grid steps per solve, default 100000), ``FRO_FIT_GRID_CAP``
(max alpha x A pairs per fit, default 10000), ``FRO_STATIC_DIR`` (UI bundle
location), ``FRO_PORT`` (listen port for ``python -m fro.service``,
default 8080).  Request bodies above 1 MiB are refused with 413.
"""

from __future__ import annotations

import json
import math
import os
import threading
from pathlib import Path
from typing import Optional

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, Response
from fastapi.staticfiles import StaticFiles

from . import __version__, analytic, dataio, solver
from .expressions import EvaluationError, ExpressionError, parse_expression
from .cli import DEFAULTS

__all__ = ["create_app", "render_svg", "MAX_BODY_BYTES"]

MAX_BODY_BYTES = 1 << 20


def _config_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    return int(raw) if raw else default


def _problem_from_payload(payload: dict) -> solver.FroProblem:
    def num(key: str) -> float:
        value = payload.get(key, DEFAULTS[key])
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise solver.ProblemValidationError(
                "non-finite-parameter", f"field {key!r} must be a number, got {value!r}"
            )
        return float(value)

    forcing_text = payload.get("forcing", DEFAULTS["forcing"])
    if not isinstance(forcing_text, str):
        raise solver.ProblemValidationError(
            "non-finite-parameter", f"field 'forcing' must be a string, got {forcing_text!r}"
        )
    forcing = None if forcing_text.strip() == "0" else parse_expression(forcing_text)
    return solver.FroProblem(
        alpha=num("alpha"),
        relax_coeff=num("coeff"),
        forcing=forcing,
        y0=num("y0"),
        y0_prime=num("yp0"),
        step=num("dt"),
        duration=num("duration"),
    )


def _solve_from_payload(payload: dict, n_cap: int) -> solver.Trajectory:
    method = payload.get("method", "pece")
    if method not in ("pece", "analytic"):
        raise solver.ProblemValidationError(
            "order-out-of-range", f"method must be 'pece' or 'analytic', got {method!r}"
        )
    problem = _problem_from_payload(payload)
    solver.validate(problem)
    if problem.n_steps() > n_cap:
        raise solver.ProblemValidationError(
            "step-count-too-large",
            f"duration/dt = {problem.n_steps()} exceeds the configured cap of {n_cap}",
        )
    if method == "analytic":
        return analytic.analytic_solution(problem)
    return solver.solve_pece(problem)


def _solve_response(traj: solver.Trajectory) -> dict:
    return {
        "t": [float(v) for v in traj.times],
        "u": [float(v) for v in traj.values],
        "meta": dataio.trajectory_meta(traj),
    }


# ---------------------------------------------------------------------------
# SVG rendering
# ---------------------------------------------------------------------------

_SVG_W, _SVG_H = 800, 500
_MARGIN = 55.0


def _nice_ticks(lo: float, hi: float, n: int = 6) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    raw = (hi - lo) / n
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0):
        if raw <= mult * mag:
            step = mult * mag
            break
    first = math.ceil(lo / step) * step
    ticks = []
    v = first
    while v <= hi + 1e-12 * abs(hi):
        ticks.append(0.0 if abs(v) < 1e-15 else v)
        v += step
    return ticks


def render_svg(traj: solver.Trajectory, title: str = "") -> str:
    """Deterministic standalone SVG: axes, ticks, one polyline."""
    t = np.asarray(traj.times)
    u = np.asarray(traj.values)
    t_lo, t_hi = float(t[0]), float(t[-1])
    u_lo, u_hi = float(np.min(u)), float(np.max(u))
    if u_hi - u_lo < 1e-12:
        pad = max(1.0, abs(u_hi)) * 0.5
        u_lo, u_hi = u_lo - pad, u_hi + pad
    else:
        pad = 0.05 * (u_hi - u_lo)
        u_lo, u_hi = u_lo - pad, u_hi + pad

    inner_w = _SVG_W - 2 * _MARGIN
    inner_h = _SVG_H - 2 * _MARGIN

    def sx(x: float) -> float:
        return _MARGIN + (x - t_lo) / (t_hi - t_lo) * inner_w if t_hi > t_lo else _MARGIN

    def sy(y: float) -> float:
        return _SVG_H - _MARGIN - (y - u_lo) / (u_hi - u_lo) * inner_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SVG_W}" height="{_SVG_H}" '
        f'viewBox="0 0 {_SVG_W} {_SVG_H}">',
        f'<rect width="{_SVG_W}" height="{_SVG_H}" fill="white"/>',
    ]
    if title:
        parts.append(
            f'<text x="{_SVG_W / 2:.1f}" y="24" text-anchor="middle" '
            f'font-family="sans-serif" font-size="14">{title}</text>'
        )
    # axes box
    parts.append(
        f'<rect x="{_MARGIN}" y="{_MARGIN}" width="{inner_w}" height="{inner_h}" '
        f'fill="none" stroke="black" stroke-width="1"/>'
    )
    for tick in _nice_ticks(t_lo, t_hi):
        x = sx(tick)
        parts.append(f'<line x1="{x:.2f}" y1="{_SVG_H - _MARGIN}" x2="{x:.2f}" '
                     f'y2="{_SVG_H - _MARGIN + 5}" stroke="black"/>')
        parts.append(f'<text x="{x:.2f}" y="{_SVG_H - _MARGIN + 18}" text-anchor="middle" '
                     f'font-family="sans-serif" font-size="11">{tick:g}</text>')
    for tick in _nice_ticks(u_lo, u_hi):
        y = sy(tick)
        parts.append(f'<line x1="{_MARGIN - 5}" y1="{y:.2f}" x2="{_MARGIN}" y2="{y:.2f}" '
                     f'stroke="black"/>')
        parts.append(f'<text x="{_MARGIN - 8}" y="{y + 4:.2f}" text-anchor="end" '
                     f'font-family="sans-serif" font-size="11">{tick:g}</text>')
    if u_lo < 0.0 < u_hi:
        y0 = sy(0.0)
        parts.append(f'<line class="axis-zero" x1="{_MARGIN}" y1="{y0:.4f}" '
                     f'x2="{_SVG_W - _MARGIN}" y2="{y0:.4f}" stroke="#999" '
                     f'stroke-dasharray="4,3" stroke-width="1"/>')
    points = " ".join(f"{sx(float(a)):.4f},{sy(float(b)):.4f}" for a, b in zip(t, u))
    parts.append(f'<polyline fill="none" stroke="#c03030" stroke-width="1.5" points="{points}"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# ---------------------------------------------------------------------------
# application factory
# ---------------------------------------------------------------------------


def create_app(
    n_cap: Optional[int] = None,
    fit_grid_cap: Optional[int] = None,
    static_dir: Optional[str] = None,
) -> FastAPI:
    n_cap = n_cap if n_cap is not None else _config_int("FRO_N_CAP", 100_000)
    fit_grid_cap = fit_grid_cap if fit_grid_cap is not None else _config_int(
        "FRO_FIT_GRID_CAP", 10_000
    )
    app = FastAPI(title="fro", version=__version__, docs_url=None, redoc_url=None)
    app.state.request_count = 0
    app.state.count_lock = threading.Lock()

    @app.middleware("http")
    async def guard_and_count(request: Request, call_next):
        length = request.headers.get("content-length")
        if length is not None and int(length) > MAX_BODY_BYTES:
            return JSONResponse({"error": "request body exceeds 1 MiB"}, status_code=413)
        with app.state.count_lock:
            app.state.request_count += 1
        return await call_next(request)

    def error_json(status: int, message: str, **extra) -> JSONResponse:
        return JSONResponse({"error": message, **extra}, status_code=status)

    async def read_json(request: Request) -> dict:
        body = await request.body()
        if len(body) > MAX_BODY_BYTES:
            raise _BodyTooLarge()
        try:
            payload = json.loads(body.decode("utf-8") or "{}")
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise _BadJson(str(exc)) from exc
        if not isinstance(payload, dict):
            raise _BadJson("body must be a JSON object")
        return payload

    class _BodyTooLarge(Exception):
        pass

    class _BadJson(Exception):
        pass

    @app.post("/api/solve")
    async def api_solve(request: Request):
        try:
            payload = await read_json(request)
            traj = _solve_from_payload(payload, n_cap)
            return JSONResponse(_solve_response(traj))
        except _BodyTooLarge:
            return error_json(413, "request body exceeds 1 MiB")
        except _BadJson as exc:
            return error_json(400, f"malformed JSON body: {exc}")
        except ExpressionError as exc:
            return error_json(422, f"forcing does not parse: {exc}", position=exc.position)
        except EvaluationError as exc:
            return error_json(422, f"forcing failed to evaluate: {exc}")
        except solver.ProblemValidationError as exc:
            return error_json(400, str(exc))
        except solver.DivergenceError as exc:
            return error_json(400, f"solution diverged: {exc}")
        except Exception as exc:  # pragma: no cover - internal faults
            return error_json(500, f"internal error: {exc}")

    @app.post("/api/fit")
    async def api_fit(request: Request):
        try:
            payload = await read_json(request)
            series_doc = payload.get("series")
            if not isinstance(series_doc, dict):
                return error_json(400, "field 'series' must be an object with 'time' and 'value' arrays")
            times = series_doc.get("time")
            values = series_doc.get("value")
            if not isinstance(times, list) or not isinstance(values, list):
                return error_json(400, "series needs 'time' and 'value' arrays")
            try:
                series = dataio.ExperimentalSeries(
                    np.asarray(times, dtype=float),
                    np.asarray(values, dtype=float),
                    label=str(series_doc.get("label", "")),
                )
            except (dataio.SeriesFormatError, ValueError) as exc:
                return error_json(400, f"invalid series: {exc}")
            alpha_grid = payload.get("alpha_grid")
            coeff_grid = payload.get("coeff_grid")
            if not isinstance(alpha_grid, list) or not isinstance(coeff_grid, list) \
                    or not alpha_grid or not coeff_grid:
                return error_json(400, "non-empty 'alpha_grid' and 'coeff_grid' arrays are required")
            if len(alpha_grid) * len(coeff_grid) > fit_grid_cap:
                return error_json(
                    413,
                    f"grid of {len(alpha_grid) * len(coeff_grid)} pairs exceeds the cap "
                    f"of {fit_grid_cap}",
                )
            dt = float(payload.get("dt", 0.01))
            last_t = float(series.times[-1])
            duration = float(payload.get("duration", math.ceil(last_t / dt - 1e-9) * dt))
            y0 = float(payload.get("y0", series.values[0]))
            if duration / dt > n_cap:
                return error_json(400, f"duration/dt exceeds the configured cap of {n_cap}")
            template = solver.FroProblem(
                alpha=float(alpha_grid[0]), relax_coeff=float(coeff_grid[0]),
                forcing=None, y0=y0, y0_prime=0.0, step=dt, duration=duration,
            )
            report = dataio.grid_fit(series, [float(a) for a in alpha_grid],
                                     [float(c) for c in coeff_grid], template)
            return JSONResponse({
                "alpha": report.params.alpha,
                "coeff": report.params.relax_coeff,
                "rmse": report.rmse,
                "max_abs_error": report.max_abs_error,
                "relative_rmse": report.relative_rmse,
                "y0": report.params.y0,
                "dt": report.params.step,
                "duration": report.params.duration,
            })
        except _BodyTooLarge:
            return error_json(413, "request body exceeds 1 MiB")
        except _BadJson as exc:
            return error_json(400, f"malformed JSON body: {exc}")
        except (solver.ProblemValidationError, ValueError) as exc:
            return error_json(400, str(exc))
        except Exception as exc:  # pragma: no cover
            return error_json(500, f"internal error: {exc}")

    @app.get("/api/plot")
    async def api_plot(request: Request):
        try:
            payload: dict = {}
            for key in ("alpha", "coeff", "dt", "duration", "y0", "yp0"):
                if key in request.query_params:
                    try:
                        payload[key] = float(request.query_params[key])
                    except ValueError:
                        return error_json(400, f"query parameter {key!r} must be numeric")
            if "forcing" in request.query_params:
                payload["forcing"] = request.query_params["forcing"]
            if "method" in request.query_params:
                payload["method"] = request.query_params["method"]
            traj = _solve_from_payload(payload, n_cap)
            title = (f"alpha={traj.problem.alpha:g} A={traj.problem.relax_coeff:g} "
                     f"({traj.method})")
            svg = render_svg(traj, title=title)
            return Response(content=svg, media_type="image/svg+xml")
        except ExpressionError as exc:
            return error_json(422, f"forcing does not parse: {exc}", position=exc.position)
        except EvaluationError as exc:
            return error_json(422, f"forcing failed to evaluate: {exc}")
        except solver.ProblemValidationError as exc:
            return error_json(400, str(exc))
        except solver.DivergenceError as exc:
            return error_json(400, f"solution diverged: {exc}")
        except Exception as exc:  # pragma: no cover
            return error_json(500, f"internal error: {exc}")

    @app.api_route("/api/health", methods=["GET", "HEAD"])
    async def api_health():
        return JSONResponse({"status": "ok", "version": __version__})

    static_dir = static_dir or os.environ.get("FRO_STATIC_DIR")
    if static_dir is None:
        bundled = Path(__file__).resolve().parent.parent.parent / "frontend" / "dist"
        static_dir = str(bundled) if bundled.is_dir() else None
    if static_dir and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")
    return app


def main() -> None:  # pragma: no cover - manual entry point
    import uvicorn

    port = _config_int("FRO_PORT", 8080)
    uvicorn.run(create_app(), host="127.0.0.1", port=port)


if __name__ == "__main__":  # pragma: no cover
    main()
