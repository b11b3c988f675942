"""Command-line front end.

Inputs are ``file:<path>`` (quiver DSL) or ``builtin:<family>:<params>``
with families truncpoly, matrix, cyclicgroup, An, cycle, mid, inbranch,
outbranch, crossing.  Exit codes: 0 ok, 1 usage or parse error, 2 a
validation or property failure.
"""

from __future__ import annotations

import json
import random
import re
import sys
from fractions import Fraction

import click

from nearfrob import algebra as alg
from nearfrob import gentlealg as gen
from nearfrob import nfsolver as nf
from nearfrob import quiver as qv
from nearfrob.exactlin import fmt

EXIT_USAGE = 1
EXIT_FAIL = 2
CENSUS_MAX_BUDGET = 5
QUIVER_FAMILIES = ("An", "cycle", "mid", "inbranch", "outbranch", "crossing")
FAMILIES = ("truncpoly", "matrix", "cyclicgroup") + QUIVER_FAMILIES


class Failure(Exception):
    """A validation or property failure; exits with code 2."""


# -- input resolution ------------------------------------------------------

def _ints(text: str, sel: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise click.UsageError(f"bad parameters in {sel!r}") from None


def resolve_spec(sel: str) -> qv.BoundQuiverSpec | None:
    """Bound quiver behind a selector, or None for structure-constant families."""
    if sel.startswith("file:"):
        path = sel[5:]
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise click.UsageError(f"cannot read {path}: {e.strerror}") from None
        return qv.parse_quiver(text, name=path)
    body = sel[8:] if sel.startswith("builtin:") else sel
    family, _, params = body.partition(":")
    if family not in FAMILIES:
        raise click.UsageError(f"unknown input {sel!r}; families: {', '.join(FAMILIES)}")
    if family not in QUIVER_FAMILIES:
        return None
    try:
        return alg.builtin_spec(family, _ints(params, sel))
    except TypeError:
        raise click.UsageError(f"wrong number of parameters in {sel!r}") from None


def resolve_algebra(sel: str, max_paths: int) -> alg.FiniteAlgebra:
    spec = resolve_spec(sel)
    if spec is not None:
        a = alg.from_bound_quiver(spec, cap=max_paths)
    else:
        body = sel[8:] if sel.startswith("builtin:") else sel
        family, _, params = body.partition(":")
        try:
            a = alg.builtin(family, _ints(params, sel))
        except TypeError:
            raise click.UsageError(f"wrong number of parameters in {sel!r}") from None
    return a


def _load_delta_file(a: alg.FiniteAlgebra, path: str) -> nf.CasimirElement:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, ValueError) as e:
        raise click.UsageError(f"cannot read coproduct file {path}: {e}") from None
    entries = data["delta"] if isinstance(data, dict) else data
    try:
        coeffs = {(int(i), int(j)): Fraction(c) for i, j, c in entries}
    except (TypeError, ValueError):
        raise click.UsageError("coproduct file must hold [[row, col, \"p/q\"], ...]") from None
    if any(not (0 <= i < a.dim and 0 <= j < a.dim) for i, j in coeffs):
        raise click.UsageError("coproduct file indexes outside the algebra")
    d = nf.CasimirElement(a, coeffs)
    bad = d.violation()
    if bad is not None:
        raise Failure(f"coproduct from {path} fails the bimodule condition at {a.labels[bad]}")
    return d


def select_delta(a: alg.FiniteAlgebra, index: int | None, delta_file: str | None = None) -> nf.CasimirElement:
    """Basis coproduct by canonical index (default 0), the zero coproduct if there is none."""
    if delta_file:
        return _load_delta_file(a, delta_file)
    space = nf.casimir_space(a)
    if index is None:
        return space.basis[0] if space.basis else nf.CasimirElement.zero(a)
    if not 0 <= index < space.dimension:
        raise click.UsageError(f"coproduct index {index} out of range (frobdim {space.dimension})")
    return space.basis[index]


def parse_element(a: alg.FiniteAlgebra, text: str) -> tuple[Fraction, ...]:
    """Linear combination of basis labels, e.g. ``a.b - 1/2*x^2``."""
    v = [Fraction(0)] * a.dim
    body = text.strip()
    if not body:
        raise click.UsageError("empty element")
    if body[0] not in "+-":
        body = "+" + body
    for sign, term in re.findall(r"([+-])\s*([^+-]+)", body):
        term = term.strip()
        m = re.match(r"^(\d+(?:/\d+)?)\s*\*?\s*(\S+)$", term)
        coef, lab = (Fraction(m.group(1)), m.group(2)) if m and m.group(2) in a.labels else (Fraction(1), term)
        if lab not in a.labels:
            raise click.UsageError(f"{lab!r} is not a basis label of {a.name}")
        v[a.labels.index(lab)] += coef if sign == "+" else -coef
    return tuple(v)


# -- output ----------------------------------------------------------------

def emit(payload: dict, text: str, fmt_: str) -> None:
    if fmt_ == "json":
        click.echo(json.dumps(payload, sort_keys=True, ensure_ascii=False, indent=2))
    else:
        click.echo(text)


def _delta_json(d: nf.CasimirElement) -> list:
    return [[i, j, fmt(c)] for (i, j), c in sorted(d.coeffs.items())]


def _images_text(a: alg.FiniteAlgebra, d: nf.CasimirElement, indent: str = "    ") -> list[str]:
    c = nf.induce_coproduct(d, check=False)
    return [f"{indent}Δ({a.labels[k]}) = {nf.tensor_text(a, img)}"
            for k, img in enumerate(c.images) if img]


def _verify(a: alg.FiniteAlgebra, d: nf.CasimirElement) -> dict:
    c = nf.induce_coproduct(d, check=False)
    return {"bimodule": nf.verify_bimodule(c), "coassociative": nf.verify_coassociative(c)}


FORMAT = click.option("--format", "fmt_", type=click.Choice(["text", "json"]), default="text",
                      show_default=True, help="Output format.")
MAX_PATHS = click.option("--max-paths", type=click.IntRange(1), default=qv.DEFAULT_PATH_CAP,
                         show_default=True, help="Cap on enumerated paths.")


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def cli():
    """Nearly Frobenius structures on finite-dimensional algebras."""


@cli.command()
@click.argument("input_")
@FORMAT
@MAX_PATHS
def frobdim(input_, fmt_, max_paths):
    """Print dim_k and the Frobenius dimension."""
    a = resolve_algebra(input_, max_paths)
    fd = nf.frobdim(a)
    emit({"algebra": a.name, "dim_k": a.dim, "frobdim": fd}, f"dim_k={a.dim} frobdim={fd}", fmt_)


@cli.command()
@click.argument("input_")
@FORMAT
@MAX_PATHS
@click.option("--verify", is_flag=True, help="Check bimodule and coassociativity of each element.")
def basis(input_, fmt_, max_paths, verify):
    """Canonical basis of the Frobenius space."""
    a = resolve_algebra(input_, max_paths)
    space = nf.casimir_space(a)
    payload = nf.space_to_json(space)
    payload["labels"] = list(a.labels)
    lines = [f"{a.name}: dim_k={a.dim} frobdim={space.dimension}"]
    ok = True
    for k, d in enumerate(space.basis):
        lines.append(f"[{k}] δ = {nf.tensor_text(a, d.coeffs)}")
        lines += _images_text(a, d)
        if verify:
            v = _verify(a, d)
            payload["basis"][k]["verified"] = v
            ok &= all(v.values())
            lines.append(f"    bimodule={'OK' if v['bimodule'] else 'FAIL'} "
                         f"coassociative={'OK' if v['coassociative'] else 'FAIL'}")
    emit(payload, "\n".join(lines), fmt_)
    if not ok:
        raise Failure("verification failed")


@cli.command()
@click.argument("input_")
@FORMAT
@MAX_PATHS
@click.option("--index", type=int, default=None, help="Only this basis coproduct.")
@click.option("--delta-file", type=click.Path(), default=None, help="Explicit coproduct as JSON.")
def counit(input_, fmt_, max_paths, index, delta_file):
    """Search for a counit completing each basis coproduct."""
    a = resolve_algebra(input_, max_paths)
    if delta_file or index is not None:
        items = [(index, select_delta(a, index, delta_file))]
    else:
        items = list(enumerate(nf.casimir_space(a).basis))
    results, lines = [], [f"{a.name}: dim_k={a.dim}"]
    for k, d in items:
        eps = nf.find_counit(nf.induce_coproduct(d))
        entry = {"index": k, "delta": _delta_json(d),
                 "counit": None if eps is None else [fmt(x) for x in eps.values]}
        results.append(entry)
        tag = "file" if k is None else f"[{k}]"
        if eps is None:
            lines.append(f"{tag} no counit")
        else:
            vals = ", ".join(f"ε({a.labels[i]})={fmt(x)}" for i, x in enumerate(eps.values) if x) or "ε=0"
            lines.append(f"{tag} counit: {vals}")
    emit({"algebra": a.name, "dim_k": a.dim, "results": results}, "\n".join(lines), fmt_)


@cli.command()
@click.argument("input_")
@FORMAT
@MAX_PATHS
@click.option("--verify", is_flag=True, help="Also run the solver and require agreement.")
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=None,
              help="Randomize tie-breaks in the processing order.")
def gentle(input_, fmt_, max_paths, verify, seed):
    """Run the vertex-type counting algorithm on a gentle acyclic quiver."""
    spec = resolve_spec(input_)
    if spec is None:
        raise click.UsageError("gentle needs a quiver input")
    try:
        res = gen.run_gentle_algorithm(spec, random.Random(seed) if seed is not None else None)
    except gen.GentleError as e:
        raise Failure(str(e)) from None
    payload = {"algebra": spec.name, "d": res.frobdim, "trace": gen.trace_to_json(spec, res.trace)}
    lines = [gen.trace_table(spec, res.trace), f"d={res.frobdim}"]
    agree = True
    if verify:
        fd = nf.frobdim(alg.from_bound_quiver(spec, cap=max_paths))
        agree = fd == res.frobdim
        payload["solver_frobdim"] = fd
        payload["agree"] = agree
        lines.append(f"solver frobdim={fd} verify {'OK' if agree else 'MISMATCH'}")
    emit(payload, "\n".join(lines), fmt_)
    if not agree:
        raise Failure(f"algorithm d={res.frobdim} disagrees with solver frobdim={payload['solver_frobdim']}")


@cli.command()
@click.option("--budget", type=click.IntRange(0), default=4, show_default=True,
              help="Maximum number of vertices and of arrows.")
@click.option("--include-cyclic", is_flag=True, help="Also feed C(1,1), which is reported separately.")
@FORMAT
def census(budget, include_cyclic, fmt_):
    """Check that only linear A_n path algebras carry nonzero structures."""
    if budget > CENSUS_MAX_BUDGET:
        raise Failure(f"budget {budget} exceeds the cap {CENSUS_MAX_BUDGET}")
    specs = list(qv.iter_specs(qv.enumerate_connected_quivers(budget, budget))) if budget else []
    if include_cyclic:
        specs.append(qv.make_cyclic_family([1, 1]))
    rep = nf.nontriviality_census(specs)

    def q_json(s):
        return {"vertices": s.quiver.vertex_count,
                "arrows": [[a.source + 1, a.target + 1] for a in s.quiver.arrows]}

    payload = {
        "budget": budget,
        "entries": [dict(q_json(e.spec), frobdim=e.frobdim, linear=e.linear) for e in rep.entries],
        "skipped": [s.name for s in rep.skipped],
        "counterexamples": len(rep.counterexamples),
        "ok": rep.ok,
    }
    nontriv = [e for e in rep.entries if e.frobdim > 0]
    lines = [f"budget={budget} path_algebras={len(rep.entries)} nontrivial={len(nontriv)} "
             f"counterexamples={len(rep.counterexamples)}"]
    for e in nontriv:
        lines.append(f"  nontrivial: {e.spec.quiver.vertex_count} vertices, frobdim={e.frobdim}, "
                     f"linear={'yes' if e.linear else 'no'}")
    for e in rep.counterexamples:
        arrows = " ".join(f"{a.source + 1}->{a.target + 1}" for a in e.spec.quiver.arrows)
        lines.append(f"  COUNTEREXAMPLE: {arrows} frobdim={e.frobdim}")
    for s in rep.skipped:
        lines.append(f"  skipped (has relations): {s.name}")
    emit(payload, "\n".join(lines), fmt_)
    if not rep.ok:
        raise Failure("census found a counterexample")


@cli.command()
@click.argument("input_")
@FORMAT
@MAX_PATHS
@click.option("--verify", is_flag=True, help="Also verify every basis coproduct.")
def validate(input_, fmt_, max_paths, verify):
    """Check an input: admissibility, algebra axioms, gentleness."""
    checks: dict[str, bool] = {}
    notes: list[str] = []
    spec = resolve_spec(input_)
    if spec is not None:
        checks["admissible"] = qv.validate_admissible(spec, cap=max_paths)
        rep = qv.is_gentle(spec)
        notes += list(rep.violations)
        gentle_ok = bool(rep)
    else:
        gentle_ok = None
    a = None
    if checks.get("admissible", True):
        a = resolve_algebra(input_, max_paths)
        checks["associative"] = a.associativity_counterexample() is None
        checks["unital"] = a.unit_counterexample() is None
        checks["generators"] = a.generators_generate()
        if verify:
            ok = True
            for d in nf.casimir_space(a).basis:
                ok &= all(_verify(a, d).values())
            checks["coproducts"] = ok
    payload = {"input": input_, "checks": checks, "gentle": gentle_ok,
               "gentle_violations": notes, "ok": all(checks.values())}
    if a is not None:
        payload["dim_k"] = a.dim
    lines = [f"{k}: {'OK' if v else 'FAIL'}" for k, v in checks.items()]
    if gentle_ok is not None:
        lines.append(f"gentle: {'yes' if gentle_ok else 'no'}")
        lines += [f"  {n}" for n in notes]
    emit(payload, "\n".join(lines), fmt_)
    if not payload["ok"]:
        raise Failure("validation failed")


# -- construct -------------------------------------------------------------

def _report_construction(con: alg.Construction, fmt_: str, extra: dict | None = None) -> None:
    a, d = con.algebra, con.coproduct
    v = _verify(a, d)
    payload = {"algebra": a.name, "dim_k": a.dim, "labels": list(a.labels),
               "delta": _delta_json(d), "verified": v, "frobdim": nf.frobdim(a)}
    payload.update(extra or {})
    lines = [f"{a.name}: dim_k={a.dim} frobdim={payload['frobdim']}",
             "basis: " + " ".join(a.labels),
             f"δ = {nf.tensor_text(a, d.coeffs)}"]
    lines += _images_text(a, d)
    lines.append(f"bimodule={'OK' if v['bimodule'] else 'FAIL'} "
                 f"coassociative={'OK' if v['coassociative'] else 'FAIL'}")
    emit(payload, "\n".join(lines), fmt_)
    if not all(v.values()):
        raise Failure("constructed coproduct failed verification")


@cli.group()
def construct():
    """Build a new algebra and carry a coproduct to it."""


def _construct_opts(f):
    for dec in (FORMAT, MAX_PATHS):
        f = dec(f)
    return f


@construct.command("op")
@click.argument("input_")
@click.option("--delta", type=int, default=None, help="Basis index of the coproduct to transport.")
@click.option("--delta-file", type=click.Path(), default=None)
@_construct_opts
def construct_op(input_, delta, delta_file, fmt_, max_paths):
    """Opposite algebra."""
    a = resolve_algebra(input_, max_paths)
    _report_construction(alg.opposite(a, select_delta(a, delta, delta_file)), fmt_)


@construct.command("dsum")
@click.argument("inputs", nargs=-1, required=True)
@click.option("--delta", type=int, multiple=True, help="Basis index per summand (repeat).")
@_construct_opts
def construct_dsum(inputs, delta, fmt_, max_paths):
    """Direct sum of two or more algebras."""
    algs = [resolve_algebra(s, max_paths) for s in inputs]
    if delta and len(delta) != len(algs):
        raise click.UsageError("give --delta once per summand or not at all")
    ds = [select_delta(a, delta[k] if delta else None) for k, a in enumerate(algs)]
    _report_construction(alg.direct_sum(algs, ds), fmt_)


@construct.command("tensor")
@click.argument("left")
@click.argument("right")
@click.option("--delta", type=int, multiple=True, help="Basis index for each factor (repeat twice).")
@_construct_opts
def construct_tensor(left, right, delta, fmt_, max_paths):
    """Tensor product of two algebras."""
    a, b = resolve_algebra(left, max_paths), resolve_algebra(right, max_paths)
    if delta and len(delta) != 2:
        raise click.UsageError("give --delta twice or not at all")
    da = select_delta(a, delta[0] if delta else None)
    db = select_delta(b, delta[1] if delta else None)
    _report_construction(alg.tensor_product(a, b, da, db), fmt_)


@construct.command("quotient")
@click.argument("input_")
@click.option("--ideal", "gens", multiple=True, required=True,
              help="Ideal generator as a combination of basis labels (repeatable).")
@click.option("--delta", type=int, default=None)
@click.option("--delta-file", type=click.Path(), default=None)
@_construct_opts
def construct_quotient(input_, gens, delta, delta_file, fmt_, max_paths):
    """Quotient by the ideal generated by --ideal elements."""
    a = resolve_algebra(input_, max_paths)
    d = select_delta(a, delta, delta_file)
    j = alg.ideal_closure(a, [parse_element(a, g) for g in gens])
    _report_construction(alg.quotient(a, j, d), fmt_, {"ideal_dim": j.dim})


@construct.command("pullback")
@click.argument("a_in")
@click.argument("b_in")
@click.argument("c_in")
@click.option("--delta", type=int, default=None, help="Basis index of the coproduct on C.")
@_construct_opts
def construct_pullback(a_in, b_in, c_in, delta, fmt_, max_paths):
    """Pullback of A -> C <- B; maps send shared labels to themselves and the rest to 0."""
    a, b, c = (resolve_algebra(s, max_paths) for s in (a_in, b_in, c_in))
    dc = select_delta(c, delta)
    f_a = alg.AlgebraMorphism.from_label_map(a, c, {l: l for l in a.labels if l in c.labels})
    f_b = alg.AlgebraMorphism.from_label_map(b, c, {l: l for l in b.labels if l in c.labels})
    da, db = alg.lift_casimir(f_a, dc), alg.lift_casimir(f_b, dc)
    if da is None or db is None:
        raise Failure("no coproduct on A or B is compatible with the chosen one on C")
    _report_construction(alg.pullback(f_a, f_b, da, db, dc), fmt_)


# -- entry point -----------------------------------------------------------

def main(argv: list[str] | None = None) -> int:
    try:
        cli.main(args=argv, prog_name="nearfrob", standalone_mode=False)
    except click.exceptions.Exit as e:
        return e.exit_code
    except click.Abort:
        click.echo("aborted", err=True)
        return EXIT_USAGE
    except (click.UsageError, qv.ParseError) as e:
        click.echo(f"error: {e.format_message() if isinstance(e, click.UsageError) else e}", err=True)
        return EXIT_USAGE
    except click.ClickException as e:
        click.echo(f"error: {e.format_message()}", err=True)
        return EXIT_USAGE
    except (Failure, qv.QuiverError, alg.AlgebraError, nf.CasimirError, gen.GentleError) as e:
        click.echo(f"error: {e}", err=True)
        return EXIT_FAIL
    return 0


if __name__ == "__main__":
    sys.exit(main())
