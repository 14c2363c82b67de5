"""HTTP/JSON facade over parse, synthesize, simulate, and cost.

The service is stateless: every request carries the full source text, so
request order never changes any individual response. Handlers are plain
functions executed on the framework's bounded worker pool, which keeps
health checks responsive while a large source is being synthesized.
User faults (bad syntax, bad mode, missing inputs) answer 400 with a
diagnostics body; only genuine server bugs surface as 500. Sources over
1 MiB are refused with 413.
"""

from __future__ import annotations

import os
from typing import Any

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import FileResponse, HTMLResponse, JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from . import compile_source
from .diagnostics import Diagnostic, InterpreterError, SynthesisError
from .interpreter import interpret
from .realfmt import emit_real
from .simulator import run
from .synthesis import (
    SynthesisMode,
    SynthesisResult,
    embed_inputs,
    extract_outputs,
    synthesize,
)

SCHEMA_VERSION = 1
MAX_SOURCE_BYTES = 1 << 20


class ParseRequest(BaseModel):
    source: str


class SynthesizeRequest(BaseModel):
    source: str
    mode: str


class SimulateRequest(BaseModel):
    source: str
    mode: str
    inputs: dict[str, int]
    oracle: bool = False


class CostRequest(BaseModel):
    source: str
    mode: str


def _diag_payload(diagnostics: list[Diagnostic]) -> list[dict[str, Any]]:
    return [d.to_dict() for d in diagnostics]


def _fault(status: int, diagnostics: list[Diagnostic] | None = None,
           message: str | None = None) -> JSONResponse:
    body: dict[str, Any] = {"schemaVersion": SCHEMA_VERSION, "ok": False, "diagnostics": []}
    if diagnostics:
        body["diagnostics"] = _diag_payload(diagnostics)
    if message:
        body["diagnostics"].append(
            {"severity": "error", "message": message, "line": 1, "col": 1, "endLine": 1, "endCol": 1})
    return JSONResponse(status_code=status, content=body)


def _stats_dict(result: SynthesisResult, mode: str, program_name: str) -> dict[str, Any]:
    stats = result.stats
    return {
        "program": program_name,
        "mode": mode,
        "lines": stats.line_count,
        "constants": stats.constant_line_count,
        "garbage": stats.garbage_count,
        "gates": stats.gate_count,
        "quantumCost": stats.quantum_cost,
    }


def _circuit_payload(result: SynthesisResult) -> dict[str, Any]:
    circuit = result.circuit
    return {
        "real": emit_real(circuit),
        "lines": [
            {
                "index": line.index,
                "label": line.label,
                "constant": line.is_constant,
                "garbage": line.is_garbage,
                "input": line.input_name,
                "output": line.output_name,
            }
            for line in circuit.lines
        ],
        "gates": [
            {"kind": gate.kind, "controls": list(gate.controls), "targets": list(gate.targets)}
            for gate in circuit.gates
        ],
        "signals": [
            {"name": name, "kind": bound.kind, "width": bound.width, "lines": list(bound.lines)}
            for name, bound in result.binding.signals.items()
        ],
    }


def create_app(static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="syrec service", docs_url=None, redoc_url=None)

    @app.exception_handler(RequestValidationError)
    def handle_validation(_request: Request, exc: RequestValidationError) -> JSONResponse:
        return _fault(400, message=f"malformed request: {exc.errors()[0].get('msg', 'invalid body')}")

    @app.get("/api/health")
    def health() -> dict[str, Any]:
        return {"ok": True, "schemaVersion": SCHEMA_VERSION}

    @app.post("/api/parse")
    def parse_endpoint(request: ParseRequest) -> JSONResponse:
        oversized = _check_size(request.source)
        if oversized:
            return oversized
        outcome = compile_source(request.source)
        if not outcome.ok:
            return _fault(400, outcome.diagnostics)
        return JSONResponse({
            "schemaVersion": SCHEMA_VERSION,
            "ok": True,
            "diagnostics": _diag_payload(outcome.diagnostics),
        })

    @app.post("/api/synthesize")
    def synthesize_endpoint(request: SynthesizeRequest) -> JSONResponse:
        prepared = _prepare(request.source, request.mode)
        if isinstance(prepared, JSONResponse):
            return prepared
        program, mode, warnings = prepared
        try:
            result = synthesize(program, mode)
        except SynthesisError as exc:
            return _fault(400, message=str(exc))
        body = {
            "schemaVersion": SCHEMA_VERSION,
            "ok": True,
            "diagnostics": _diag_payload(warnings),
            "program": program.entry.name,
            "mode": mode.value,
            "stats": _stats_dict(result, mode.value, program.entry.name),
        }
        body.update(_circuit_payload(result))
        return JSONResponse(body)

    @app.post("/api/simulate")
    def simulate_endpoint(request: SimulateRequest) -> JSONResponse:
        prepared = _prepare(request.source, request.mode)
        if isinstance(prepared, JSONResponse):
            return prepared
        program, mode, warnings = prepared
        try:
            result = synthesize(program, mode)
            word = embed_inputs(result.binding, request.inputs, result.circuit.line_count)
        except (SynthesisError, ValueError) as exc:
            return _fault(400, message=str(exc))
        outputs = extract_outputs(result.binding, run(result.circuit, word))
        body: dict[str, Any] = {
            "schemaVersion": SCHEMA_VERSION,
            "ok": True,
            "diagnostics": _diag_payload(warnings),
            "outputs": outputs,
        }
        if request.oracle:
            try:
                reference = interpret(program, request.inputs).final_state
            except InterpreterError as exc:
                return _fault(400, message=str(exc))
            oracle_outputs = {name: reference[name] for name in outputs}
            body["oracle"] = {
                "outputs": oracle_outputs,
                "match": oracle_outputs == outputs,
            }
        return JSONResponse(body)

    @app.post("/api/cost")
    def cost_endpoint(request: CostRequest) -> JSONResponse:
        prepared = _prepare(request.source, request.mode)
        if isinstance(prepared, JSONResponse):
            return prepared
        program, mode, warnings = prepared
        try:
            result = synthesize(program, mode)
        except SynthesisError as exc:
            return _fault(400, message=str(exc))
        return JSONResponse({
            "schemaVersion": SCHEMA_VERSION,
            "ok": True,
            "diagnostics": _diag_payload(warnings),
            "report": _stats_dict(result, mode.value, program.entry.name),
        })

    def _check_size(source: str) -> JSONResponse | None:
        if len(source.encode("utf-8")) > MAX_SOURCE_BYTES:
            return _fault(413, message="source exceeds 1 MiB")
        return None

    def _prepare(source: str, mode_name: str):
        oversized = _check_size(source)
        if oversized:
            return oversized
        try:
            mode = SynthesisMode.from_name(mode_name)
        except ValueError as exc:
            return _fault(400, message=str(exc))
        outcome = compile_source(source)
        if not outcome.ok:
            return _fault(400, outcome.diagnostics)
        return outcome.program, mode, outcome.diagnostics

    if static_dir and os.path.isdir(static_dir):
        index = os.path.join(static_dir, "index.html")

        @app.get("/", include_in_schema=False)
        def root() -> FileResponse:
            return FileResponse(index)

        app.mount("/", StaticFiles(directory=static_dir), name="playground")
    else:

        @app.get("/", include_in_schema=False)
        def root_placeholder() -> HTMLResponse:
            return HTMLResponse(
                "<!doctype html><title>syrec service</title>"
                "<p>The API is up. Build the playground (frontend/) and pass "
                "<code>--static frontend/dist</code> to serve it here.</p>")

    return app


# Published response schemas (draft 2020-12); tests validate every endpoint
# response against these.

_DIAGNOSTIC_SCHEMA = {
    "type": "object",
    "required": ["severity", "message", "line", "col"],
    "properties": {
        "severity": {"enum": ["error", "warning"]},
        "message": {"type": "string"},
        "line": {"type": "integer"},
        "col": {"type": "integer"},
        "endLine": {"type": "integer"},
        "endCol": {"type": "integer"},
    },
}

_STATS_SCHEMA = {
    "type": "object",
    "required": ["program", "mode", "lines", "constants", "garbage", "gates", "quantumCost"],
    "properties": {
        "program": {"type": "string"},
        "mode": {"enum": ["cost-aware", "line-aware"]},
        "lines": {"type": "integer", "minimum": 0},
        "constants": {"type": "integer", "minimum": 0},
        "garbage": {"type": "integer", "minimum": 0},
        "gates": {"type": "integer", "minimum": 0},
        "quantumCost": {"type": "integer", "minimum": 0},
    },
}

_BASE_PROPERTIES = {
    "schemaVersion": {"const": SCHEMA_VERSION},
    "ok": {"type": "boolean"},
    "diagnostics": {"type": "array", "items": _DIAGNOSTIC_SCHEMA},
}

RESPONSE_SCHEMAS: dict[str, dict] = {
    "health": {
        "type": "object",
        "required": ["ok", "schemaVersion"],
        "properties": {"ok": {"const": True}, "schemaVersion": {"const": SCHEMA_VERSION}},
    },
    "parse": {
        "type": "object",
        "required": ["schemaVersion", "ok", "diagnostics"],
        "properties": dict(_BASE_PROPERTIES),
    },
    "synthesize": {
        "type": "object",
        "required": ["schemaVersion", "ok", "diagnostics"],
        "properties": {
            **_BASE_PROPERTIES,
            "program": {"type": "string"},
            "mode": {"enum": ["cost-aware", "line-aware"]},
            "stats": _STATS_SCHEMA,
            "real": {"type": "string"},
            "lines": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["index", "label", "constant", "garbage"],
                    "properties": {
                        "index": {"type": "integer"},
                        "label": {"type": "string"},
                        "constant": {"type": "boolean"},
                        "garbage": {"type": "boolean"},
                        "input": {"type": ["string", "null"]},
                        "output": {"type": ["string", "null"]},
                    },
                },
            },
            "gates": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["kind", "controls", "targets"],
                    "properties": {
                        "kind": {"enum": ["mct", "mcf"]},
                        "controls": {"type": "array", "items": {"type": "integer"}},
                        "targets": {"type": "array", "items": {"type": "integer"}},
                    },
                },
            },
            "signals": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["name", "kind", "width", "lines"],
                    "properties": {
                        "name": {"type": "string"},
                        "kind": {"enum": ["in", "out", "inout", "wire", "state"]},
                        "width": {"type": "integer", "minimum": 1},
                        "lines": {"type": "array", "items": {"type": "integer"}},
                    },
                },
            },
        },
    },
    "simulate": {
        "type": "object",
        "required": ["schemaVersion", "ok", "diagnostics"],
        "properties": {
            **_BASE_PROPERTIES,
            "outputs": {"type": "object", "additionalProperties": {"type": "integer"}},
            "oracle": {
                "type": "object",
                "required": ["outputs", "match"],
                "properties": {
                    "outputs": {"type": "object", "additionalProperties": {"type": "integer"}},
                    "match": {"type": "boolean"},
                },
            },
        },
    },
    "cost": {
        "type": "object",
        "required": ["schemaVersion", "ok", "diagnostics"],
        "properties": {**_BASE_PROPERTIES, "report": _STATS_SCHEMA},
    },
}
