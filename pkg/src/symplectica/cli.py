"""Command-line front end.

Subcommands:

* ``invariants``  emittances, determinant and physicality checks of a beam file
* ``normalize``   full normalization recipe at 1, 2 or 3 DoF
* ``decouple``    pairwise (--pairing) or single-coordinate (--coord) decoupling
* ``diagonalize`` diagonalization (1 or 2 DoF; --strategy for 2 DoF)
* ``render``      stereo SVG of a 2-DoF beam file or of every step of a report
* ``gen``         seeded random physical beam file

Beam files are JSON: {"dof": 1|2|3, "matrix": [[...], ...]} or, for 2 DoF,
{"dof": 2, "components": [[...], ...]}.  A filename of ``-`` means
stdin/stdout.  Recipe reports carry the step list, the transformed matrix
in both forms and residual diagnostics; commands exit nonzero when the
accumulated map's symplecticity residual exceeds the gate tolerance
(1e-6, overridable through the SYMPLECTICA_TOL environment variable).

Exit codes: 0 ok, 1 residual gate failed, 2 invalid input,
3 nonphysical beam, 4 degenerate direction.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import bunch, dirac, pauli, sampling, viz
from .errors import (
    DegenerateDirectionError,
    DegenerateEmittanceError,
    NonPhysicalBeamError,
    SingularMatrixError,
    SymplecticaError,
)

__all__ = ["main", "load_beam_file", "verify_report"]

EXIT_OK = 0
EXIT_RESIDUAL = 1
EXIT_INVALID = 2
EXIT_NONPHYSICAL = 3
EXIT_DEGENERATE = 4

_FORMS = {1: pauli.GAMMA2, 2: dirac.GAMMA4, 3: bunch.GAMMA6}
_ORDERS = {1: 2, 2: 4, 3: 6}


def _gate_tol() -> float:
    raw = os.environ.get("SYMPLECTICA_TOL", "")
    try:
        return float(raw) if raw else 1e-6
    except ValueError:
        raise ValueError(f"SYMPLECTICA_TOL is not a number: {raw!r}")


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def load_beam_file(text: str):
    """Parse a beam file; returns (dof, matrix) with the matrix validated
    symmetric at 1e-9 relative."""
    doc = json.loads(text)
    if not isinstance(doc, dict) or "dof" not in doc:
        raise ValueError("beam file must be a JSON object with a 'dof' field")
    dof = doc["dof"]
    if dof not in (1, 2, 3):
        raise ValueError("dof must be 1, 2 or 3")
    if "components" in doc:
        if dof != 2:
            raise ValueError("component form is only defined for dof=2")
        beam = dirac.BeamMatrix4.from_components(np.asarray(doc["components"], dtype=float))
        return dof, beam.matrix
    if "matrix" not in doc:
        raise ValueError("beam file needs a 'matrix' or 'components' field")
    m = np.asarray(doc["matrix"], dtype=float)
    order = _ORDERS[dof]
    if m.shape != (order, order):
        raise ValueError(f"dof={dof} needs a {order}x{order} matrix")
    if np.abs(m - m.T).max() > 1e-9 * max(1.0, np.abs(m).max()):
        raise ValueError("beam matrix must be symmetric")
    return dof, 0.5 * (m + m.T)


def _emittances(dof: int, matrix: np.ndarray) -> list:
    if dof == 1:
        return [pauli.emittance2(pauli.BeamMatrix2.from_matrix(matrix))]
    if dof == 2:
        return list(dirac.emittances4(dirac.BeamMatrix4.from_matrix(matrix)))
    return list(bunch.emittances6(matrix))


def _matrix_doc(dof: int, matrix: np.ndarray) -> dict:
    doc = {"matrix": matrix.tolist()}
    if dof == 2:
        doc["components"] = dirac.BeamMatrix4.from_matrix(matrix).components.tolist()
    return doc


def _step_doc(step) -> dict:
    doc = {"kind": step.kind, "matrix": step.matrix.tolist()}
    if getattr(step, "axis", None) is not None:
        doc["axis"] = list(map(float, step.axis))
    if getattr(step, "scales", None) is not None:
        doc["scales"] = list(map(float, step.scales))
    if step.kind != "scale":
        doc["angle"] = float(step.angle)
    return doc


def _report(dof: int, operation: str, in_matrix, steps, out_matrix) -> dict:
    form = _FORMS[dof]
    acc = np.eye(_ORDERS[dof])
    for step in steps:
        acc = np.asarray(step.matrix) @ acc
    sym_resid = float(np.abs(acc @ form @ acc.T - form).max())
    recon = float(np.abs(acc @ in_matrix @ acc.T - out_matrix).max())
    return {
        "dof": dof,
        "operation": operation,
        "input": {**_matrix_doc(dof, in_matrix), "emittances": _emittances(dof, in_matrix)},
        "steps": [_step_doc(s) for s in steps],
        "transport": acc.tolist(),
        "output": {**_matrix_doc(dof, out_matrix), "emittances": _emittances(dof, out_matrix)},
        "residuals": {"symplectic": sym_resid, "reconstruction": recon},
    }


def verify_report(doc: dict, tol: float = 1e-12) -> bool:
    """Recompute the report residuals from the serialized matrices."""
    dof = doc["dof"]
    form = _FORMS[dof]
    acc = np.eye(_ORDERS[dof])
    for step in doc["steps"]:
        acc = np.asarray(step["matrix"], dtype=float) @ acc
    sym = float(np.abs(acc @ form @ acc.T - form).max())
    got = np.asarray(doc["input"]["matrix"], dtype=float)
    out = np.asarray(doc["output"]["matrix"], dtype=float)
    recon = float(np.abs(acc @ got @ acc.T - out).max())
    stored = doc["residuals"]
    return (
        abs(sym - stored["symplectic"]) <= tol
        and abs(recon - stored["reconstruction"]) <= tol
    )


def _dump(doc, path: str) -> None:
    _write_text(path, json.dumps(doc, indent=2) + "\n")


def _gate(doc) -> int:
    if doc["residuals"]["symplectic"] > _gate_tol():
        print(
            f"symplecticity residual {doc['residuals']['symplectic']:.3e} "
            f"exceeds gate {_gate_tol():.3e}",
            file=sys.stderr,
        )
        return EXIT_RESIDUAL
    return EXIT_OK


# ---------------------------------------------------------------- commands


def _cmd_invariants(args) -> int:
    dof, m = load_beam_file(_read_text(args.file))
    sym_resid = float(np.abs(m - m.T).max())
    try:
        eps = _emittances(dof, m)
        physical = bool(np.all(np.linalg.eigvalsh(m) > 0.0))
    except SymplecticaError:
        eps, physical = None, False
    doc = {
        "dof": dof,
        "emittances": eps,
        "determinant": float(np.linalg.det(m)),
        "symmetry_residual": sym_resid,
        "physical": physical,
    }
    if dof == 2:
        beam = dirac.BeamMatrix4.from_matrix(m)
        doc["determinant_closed_form"] = dirac.det_sym4(beam)
    _dump(doc, args.out)
    return EXIT_OK if physical else EXIT_NONPHYSICAL


def _cmd_normalize(args) -> int:
    dof, m = load_beam_file(_read_text(args.file))
    if dof == 1:
        pipeline, out = pauli.normalize2(pauli.BeamMatrix2.from_matrix(m), args.strategy)
        doc = _report(dof, "normalize", m, list(pipeline), out.matrix)
    elif dof == 2:
        pipeline, out = dirac.normalize4(dirac.BeamMatrix4.from_matrix(m))
        doc = _report(dof, "normalize", m, list(pipeline), out.matrix)
    else:
        dec = bunch.normalize6(m)
        n_inv = np.linalg.inv(dec.matrix)

        class _Step:
            kind = "eigen_normal_decomposition"
            matrix = n_inv
            angle = 0.0
            axis = None
            scales = None

        doc = _report(dof, "normalize", m, [_Step()], dec.normal_form)
        doc["residuals"]["imag_residue"] = dec.imag_residue
    _dump(doc, args.out)
    return _gate(doc)


def _cmd_decouple(args) -> int:
    dof, m = load_beam_file(_read_text(args.file))
    if dof != 2:
        raise ValueError("decoupling is defined for dof=2 files")
    beam = dirac.BeamMatrix4.from_matrix(m)
    if (args.pairing is None) == (args.coord is None):
        raise ValueError("exactly one of --pairing / --coord is required")
    if args.pairing:
        pipeline, out = dirac.decouple_pair(beam, args.pairing)
        op = f"decouple:{args.pairing}"
    else:
        pipeline, out = dirac.decouple_single(beam, args.coord)
        op = f"decouple:{args.coord}"
    doc = _report(dof, op, m, list(pipeline), out.matrix)
    _dump(doc, args.out)
    return _gate(doc)


def _cmd_diagonalize(args) -> int:
    dof, m = load_beam_file(_read_text(args.file))
    if dof == 1:
        rot, out = pauli.diagonalize2(pauli.BeamMatrix2.from_matrix(m))
        doc = _report(dof, "diagonalize", m, [rot], out.matrix)
    elif dof == 2:
        pipeline, out = dirac.diagonalize4(dirac.BeamMatrix4.from_matrix(m), args.strategy)
        doc = _report(dof, "diagonalize", m, list(pipeline), out.matrix)
    else:
        raise ValueError("diagonalize supports dof=1 and dof=2 files")
    _dump(doc, args.out)
    return _gate(doc)


def _cmd_render(args) -> int:
    doc = json.loads(_read_text(args.file))
    options = viz.RenderOptions()

    def beam_of(matrix_doc) -> dirac.BeamMatrix4:
        return dirac.BeamMatrix4.from_matrix(np.asarray(matrix_doc, dtype=float))

    if "steps" in doc:  # a recipe report: one SVG per stage
        if doc.get("dof") != 2:
            raise ValueError("only dof=2 reports can be rendered")
        if args.out == "-":
            raise ValueError("per-step rendering needs an output filename")
        stem, dot, ext = args.out.rpartition(".")
        if not dot:
            stem, ext = args.out, "svg"
        matrices = [np.asarray(doc["input"]["matrix"], dtype=float)]
        acc = np.eye(4)
        for step in doc["steps"]:
            acc = np.asarray(step["matrix"], dtype=float) @ acc
            matrices.append(acc @ matrices[0] @ acc.T)
        for i, m in enumerate(matrices):
            svg = viz.render_svg(viz.scene_of(beam_of(m)), options)
            _write_text(f"{stem}-{i}.{ext}", svg)
        return EXIT_OK
    dof, m = load_beam_file(json.dumps(doc))
    if dof != 2:
        raise ValueError("only dof=2 beams can be rendered")
    svg = viz.render_svg(viz.scene_of(beam_of(m)), options)
    _write_text(args.out, svg)
    return EXIT_OK


def _cmd_gen(args) -> int:
    rng = np.random.default_rng(args.seed)
    m = sampling.random_matrix(rng, args.dof)
    _dump({"dof": args.dof, "matrix": m.tolist()}, args.out)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symplectica",
        description="Normalize, diagonalize and decouple beam matrices "
        "by symplectic transformations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        p.add_argument("-o", "--out", default="-", help="output file ('-' = stdout)")
        return p

    p = add("invariants", _cmd_invariants, help="emittances and physicality checks")
    p.add_argument("file", help="beam file ('-' = stdin)")

    p = add("normalize", _cmd_normalize, help="transform a beam to normal form")
    p.add_argument("file")
    p.add_argument("--strategy", choices=("two_step", "direct"), default="two_step",
                   help="dof=1 normalization strategy")

    p = add("decouple", _cmd_decouple, help="decouple coordinate pairs or one coordinate")
    p.add_argument("file")
    p.add_argument("--pairing", choices=dirac.PAIRINGS)
    p.add_argument("--coord", choices=dirac.SINGLE_COORDS)

    p = add("diagonalize", _cmd_diagonalize, help="diagonalize a beam matrix")
    p.add_argument("file")
    p.add_argument("--strategy", choices=("block_first", "direct"), default="block_first")

    p = add("render", _cmd_render, help="render a beam or report to stereo SVG")
    p.add_argument("file")

    p = add("gen", _cmd_gen, help="generate a random physical beam file")
    p.add_argument("--dof", type=int, choices=(1, 2, 3), default=2)
    p.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, KeyError, json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NonPhysicalBeamError as exc:
        print(f"nonphysical beam: {exc}", file=sys.stderr)
        return EXIT_NONPHYSICAL
    except (DegenerateDirectionError, DegenerateEmittanceError, SingularMatrixError) as exc:
        print(f"degenerate input: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
