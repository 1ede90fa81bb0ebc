"""Command-line front end: ``entrolab <verb> --input FILE [options]``.

Input files are TOML with a ``[ring]`` section (characteristic, variables,
relations, optional order), an optional ``[map]`` section with one
expression per variable, and an optional ``[ideal]`` section used by the
``phi`` verb.  Exit codes: 0 success, 1 input error, 2 mathematical refusal.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from . import __version__
from .algebra import FieldSpec, MonomialOrder
from .dynamics import (
    entropy_report,
    hk_estimate,
    kunz_test,
    lambda_n,
    nagata_sample_test,
    phi_cyclic,
)
from .endomorphism import contracting_check, iterate, validate
from .errors import EntrolabError, InputError, MathematicalRefusal
from .local_ring import LocalRingPresentation, hilbert_samuel, regularity_check
from .parsing import parse_polynomial

SCHEMA_VERSION = 1
COMMANDS = ("check", "contracting", "lambda", "entropy", "kunz", "hk", "nagata",
            "phi", "hilbert-samuel", "regularity")
NEEDS_MAP = set(COMMANDS) - {"hilbert-samuel", "regularity"}


@dataclass
class JobSpec:
    command: str
    characteristic: int
    variables: list
    relations: list = field(default_factory=list)
    images: list | None = None
    ideal: list | None = None
    order: str = "degrevlex"
    n: int = 1
    max_n: int = 3
    max_N: int = 6
    samples: int = 16
    seed: int = 0
    q: str | None = None
    cap: int = 512
    output: str = "text"

    def echo(self) -> dict:
        d = asdict(self)
        d.pop("output")
        return d


def load_job(path: str, command: str, **params) -> JobSpec:
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise InputError(f"{path}: {exc}") from exc
    return job_from_mapping(data, command, **params)


def job_from_mapping(data: dict, command: str, **params) -> JobSpec:
    ring = data.get("ring")
    if not isinstance(ring, dict):
        raise InputError("missing [ring] section")
    try:
        char = int(ring.get("characteristic", 0))
        variables = [str(v) for v in ring["variables"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad [ring] section: {exc}") from exc
    for v in variables:
        if not v.isidentifier():
            raise InputError(f"variable name {v!r} is not an identifier")
    if len(set(variables)) != len(variables):
        raise InputError(f"variable names are not distinct: {variables}")
    relations = [str(r) for r in ring.get("relations", [])]
    images = None
    if "map" in data:
        m = data["map"]
        missing = [v for v in variables if v not in m]
        extra = [k for k in m if k not in variables]
        if missing or extra:
            raise InputError(f"[map] must have exactly one entry per variable "
                             f"(missing {missing}, unknown {extra})")
        images = [str(m[v]) for v in variables]
    ideal = None
    if "ideal" in data:
        ideal = [str(g) for g in data["ideal"].get("generators", [])]
    params = {k: v for k, v in params.items() if v is not None}
    return JobSpec(command=command, characteristic=char, variables=variables,
                   relations=relations, images=images, ideal=ideal,
                   order=str(ring.get("order", "degrevlex")), **params)


# -- rendering helpers ------------------------------------------------------

def _seq(values) -> list:
    return [[n, str(v)] for n, v in values]


def _frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _lambda_payload(seq) -> dict:
    return {
        "sequence": _seq(seq.values),
        "rates": [[n, str(r), r.decimal()] for (n, _), r in zip(seq.values, seq.rates)],
        "entropy_upper_bound": {
            "exact": str(seq.entropy_upper_bound),
            "decimal": seq.entropy_upper_bound.decimal(),
        },
        "exact_if_multiplicative": seq.exact_if_multiplicative,
    }


def _regularity_payload(v) -> dict:
    return {
        "status": v.status,
        "witness_N": v.witness,
        "embedding_dim": v.embedding_dim,
        "N_max": v.n_max,
        "certificate": v.certificate,
        "values": [[N, str(got), str(want)] for N, got, want in v.values],
    }


def build(job: JobSpec):
    """Parse a job into (LocalRingPresentation, validated Endomorphism or None)."""
    field_ = FieldSpec(job.characteristic)
    order = MonomialOrder(job.order)
    R = LocalRingPresentation(field_, job.variables, (), order)
    rels = [parse_polynomial(s, R.poly_ring) for s in job.relations]
    R = LocalRingPresentation(field_, job.variables, rels, order)
    phi = None
    if job.command in NEEDS_MAP:
        if job.images is None:
            raise InputError(f"command {job.command!r} needs a [map] section")
        images = [parse_polynomial(s, R.poly_ring) for s in job.images]
        phi = validate(R, images)
    return R, phi


def _execute(job: JobSpec):
    """Return (result payload, certificate labels)."""
    R, phi = build(job)
    cmd = job.command
    cap = job.cap
    if cmd == "check":
        return {"valid": True, "images": [str(g) for g in phi.images],
                "reduced_images": [str(g) for g in iterate(phi, 1)]}, ["WELL_DEFINED", "LOCAL"]
    if cmd == "contracting":
        v = contracting_check(phi)
        return {"verdict": v.label, "embedding_dim": v.embedding_dim,
                "witness_variable": v.witness}, [v.label]
    if cmd == "lambda":
        return {"n": job.n, "lambda": str(lambda_n(phi, job.n, cap))}, []
    if cmd == "entropy":
        seq = entropy_report(phi, job.max_n, cap)
        labels = ["ENTROPY_UPPER_BOUND"]
        if seq.exact_if_multiplicative:
            labels.append("MULTIPLICATIVE")
        return _lambda_payload(seq), labels
    if cmd == "kunz":
        rep = kunz_test(phi, job.max_n, job.max_N, cap)
        payload = {
            "verdict": rep.verdict,
            "witness_n": rep.witness,
            "certificate": rep.certificate,
            "n_max": rep.n_max,
            "contracting": {"verdict": rep.contracting.label,
                            "embedding_dim": rep.contracting.embedding_dim,
                            "witness_variable": rep.contracting.witness},
            "lambda": _lambda_payload(rep.lambda_seq),
            "cross_check": _regularity_payload(rep.cross_check),
        }
        return payload, [rep.verdict, rep.contracting.label, rep.cross_check.status]
    if cmd == "hk":
        q = None
        if job.q is not None:
            try:
                q = Fraction(job.q)
            except (ValueError, ZeroDivisionError) as exc:
                raise InputError(f"bad --q value {job.q!r}") from exc
            if q <= 0:
                raise InputError("--q must be positive")
        est = hk_estimate(phi, job.max_n, q, cap)
        return {"q_used": _frac(est.q_used), "provenance": est.provenance,
                "ratios": [[n, _frac(r)] for n, r in est.ratios],
                "sequence": _seq(est.lambda_seq.values),
                "convergence_asserted": False}, [est.provenance.upper()]
    if cmd == "nagata":
        rows = nagata_sample_test(phi, job.n, job.samples, job.seed, cap)
        bad = [s for s in rows if not s.equal]
        verdict = "NOT_FLAT_CERTIFIED" if bad else "CONSISTENT_WITH_FLAT"
        return {
            "n": job.n,
            "lambda": str(lambda_n(phi, job.n, cap)),
            "samples": [{"ideal": [str(g) for g in s.ideal], "length_q": str(s.length_q),
                         "lhs": str(s.lhs), "rhs": str(s.rhs), "equal": s.equal} for s in rows],
            "violations": len(bad),
            "verdict": verdict,
            "witness": [str(g) for g in bad[0].ideal] if bad else None,
        }, [verdict]
    if cmd == "phi":
        gens_src = job.ideal if job.ideal is not None else list(job.variables)
        gens = [parse_polynomial(s, R.poly_ring) for s in gens_src]
        res = phi_cyclic(phi, gens, job.n, cap)
        return {"n": job.n, "ideal": [str(g) for g in gens],
                "image_ideal": [str(g) for g in res.image_gens],
                "len_in": str(res.len_in), "len_out": str(res.len_out),
                "lambda": str(res.lambda_n), "bound": str(res.bound),
                "strict": res.strict}, ["STRICT" if res.strict else "EQUALITY"]
    if cmd == "hilbert-samuel":
        return {"values": [[N, str(hilbert_samuel(R, N))] for N in range(1, job.max_N + 1)]}, []
    if cmd == "regularity":
        v = regularity_check(R, job.max_N)
        return _regularity_payload(v), [v.status]
    raise InputError(f"unknown command {cmd!r}")


def run(job: JobSpec):
    """Execute a job; returns (report document, exit code)."""
    doc = {
        "schema_version": SCHEMA_VERSION,
        "tool": "entrolab",
        "version": __version__,
        "command": job.command,
        "job": job.echo(),
    }
    try:
        result, labels = _execute(job)
    except InputError as exc:
        doc["error"] = exc.payload()
        return doc, 1
    except MathematicalRefusal as exc:
        doc["error"] = exc.payload()
        return doc, 2
    except ValueError as exc:
        doc["error"] = {"code": "INPUT_ERROR", "message": str(exc)}
        return doc, 1
    doc["result"] = result
    doc["certificates"] = labels
    return doc, 0


def render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def render_text(doc: dict) -> str:
    lines = [f"entrolab {doc['version']} :: {doc['command']}"]
    job = doc["job"]
    ring = f"{'QQ' if job['characteristic'] == 0 else 'GF(%d)' % job['characteristic']}[{', '.join(job['variables'])}]"
    if job["relations"]:
        ring += "/(" + ", ".join(job["relations"]) + ")"
    lines.append(f"ring: {ring}")
    if job.get("images"):
        lines.append("map: " + ", ".join(f"{v} -> {g}" for v, g in zip(job["variables"], job["images"])))
    if "error" in doc:
        err = doc["error"]
        lines.append(f"refused: {err['code']}: {err['message']}")
        return "\n".join(lines) + "\n"
    res = doc["result"]
    for key in sorted(res):
        val = res[key]
        if isinstance(val, list) and val and isinstance(val[0], (list, dict)):
            lines.append(f"{key}:")
            for item in val:
                lines.append(f"  {item}")
        else:
            lines.append(f"{key}: {val}")
    if doc.get("certificates"):
        lines.append("certificates: " + ", ".join(doc["certificates"]))
    return "\n".join(lines) + "\n"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="entrolab", description="Lengths, entropy and Kunz tests for local self-maps.")
    ap.add_argument("--version", action="version", version=f"entrolab {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--input", required=True, metavar="PATH")
        p.add_argument("--n", type=int, default=None)
        p.add_argument("--max-n", dest="max_n", type=int, default=None)
        p.add_argument("--max-N", dest="max_N", type=int, default=None)
        p.add_argument("--q", default=None)
        p.add_argument("--samples", type=int, default=None)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--cap", type=int, default=None)
        p.add_argument("--json", action="store_true")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    params = dict(n=args.n, max_n=args.max_n, max_N=args.max_N, q=args.q,
                  samples=args.samples, seed=args.seed, cap=args.cap,
                  output="json" if args.json else "text")
    try:
        job = load_job(args.input, args.command, **params)
    except EntrolabError as exc:
        print(f"entrolab: {exc.code}: {exc}", file=sys.stderr)
        return 1
    doc, code = run(job)
    if "error" in doc:
        print(f"entrolab: {doc['error']['code']}: {doc['error']['message']}", file=sys.stderr)
    sys.stdout.write(render_json(doc) if job.output == "json" else render_text(doc))
    return code


if __name__ == "__main__":
    sys.exit(main())
