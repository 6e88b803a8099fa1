"""Command-line front-end: instance generation, refutation, verification, and
lower-bound experiments as reproducible, scriptable runs.

Exit codes: 0 success, 1 usage or parse problems, 2 mathematically-expected
failures (satisfiable instance, no certificate at the bound, failed
verification), 3 internal errors. Every emitted artifact embeds its full run
configuration; JSON output is canonical (sorted keys) so identical
configurations give byte-identical files.
"""

from __future__ import annotations

import json
import random
import sys

import click

from ipsforge import acceptance, generators, gf
from ipsforge.certificates import (
    Certificate,
    Instance,
    NoCertificateAtDegree,
    certificate_from_dict,
    certificate_to_dict,
    refute_linear_frobenius,
    refute_linear_lowdegree,
    refute_sparse,
    refute_symmetric_system,
    verify,
)
from ipsforge.errors import (
    BetaInSubfield,
    BudgetExceeded,
    FieldMismatch,
    IpsforgeError,
    ParseError,
    SatisfiableInstance,
    SatisfiableSystem,
)
from ipsforge.lowerbounds import (
    _batch_inverse,
    coefficient_matrix,
    degree_trial,
    eval_dimension,
    lifted_instance,
    numerator_monomial_check,
    restricted_degree_scan,
    roabp_width,
    sparsity_probe,
    top_coeff,
)
from ipsforge.mvpoly import cube_interpolate, format_elem, format_poly
from ipsforge.symfun import elem_sym

EXIT_OK, EXIT_USAGE, EXIT_MATH, EXIT_INTERNAL = 0, 1, 2, 3


class MathFailure(Exception):
    """Expected mathematical failure; becomes exit code 2 with a machine-readable payload."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


def _canonical_json(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _emit(payload: dict, out: str, fmt: str, canonical: bool, text_lines=None):
    if fmt == "json" or canonical:
        data = _canonical_json(payload)
    else:
        lines = text_lines if text_lines is not None else [
            f"{k}: {v}" for k, v in payload.items()
        ]
        data = "\n".join(lines) + "\n"
    if out == "-":
        sys.stdout.write(data)
    else:
        with open(out, "w") as fh:
            fh.write(data)


def _run_config(subcommand: str, **params) -> dict:
    cfg = {"subcommand": subcommand}
    cfg.update({k: v for k, v in params.items() if v is not None})
    return cfg


def _common_options(fn):
    fn = click.option("--format", "fmt", type=click.Choice(["json", "text"]),
                      default="json", show_default=True)(fn)
    fn = click.option("--canonical", is_flag=True,
                      help="Emit canonical JSON bytes even in text mode.")(fn)
    fn = click.option("--out", default="-", show_default=True,
                      help="Output path ('-' for stdout).")(fn)
    return fn


@click.group()
def cli():
    """ipsforge: exact IPS_LIN refutations and lower-bound oracles."""


# ---------------------------------------------------------------------------
# instance construction shared by gen and refute

def _build_instance(family: str, p: int, k: int, n: int, m: int,
                    seed: int | None, poly_texts: tuple[str, ...]) -> Instance:
    if family == "symmetric" and poly_texts:
        fld = gf.field_spec(p, k)
        names = tuple(f"e{d}" for d in range(1, n + 1))
        axioms = []
        for text in poly_texts:
            axioms.append(_parse_sym_expr(text, n, fld))
        return Instance(n, fld, axioms, "symmetric-system")
    if seed is None:
        raise click.UsageError("--seed is mandatory for randomized instance generation")
    rng = random.Random(seed)
    if family == "linear-shifted":
        return generators.linear_shifted(gf.field_tower(p, k), n, rng)
    if family == "linear-base":
        return generators.linear_base(gf.field_spec(p, k), n, rng)
    if family == "sparse-shifted":
        return generators.sparse_quadratic(gf.field_tower(p, k), n, rng)
    if family == "symmetric":
        return generators.symmetric_system(gf.field_spec(p, k), n, m, rng)
    raise click.UsageError(f"unknown family {family!r}")


def _parse_sym_expr(text: str, n: int, fld):
    """Combinations of elementary symmetric polynomials: 'e1+e2+1', '2*e3 - 1'."""
    from ipsforge.mvpoly import Poly

    compact = text.replace(" ", "")
    if not compact:
        raise ParseError("empty symmetric expression")
    acc = Poly.zero(n, fld)
    token = ""
    parts = []
    for ch in compact:
        if ch in "+-" and token:
            parts.append(token)
            token = ch if ch == "-" else ""
        else:
            token += ch if ch not in "+" else ""
    parts.append(token)
    for part in parts:
        if not part:
            continue
        sign = -1 if part.startswith("-") else 1
        body = part.lstrip("+-")
        coeff_txt, _, sym = body.partition("*")
        if not sym:
            coeff_txt, sym = ("1", body) if body.startswith("e") else (body, "")
        coeff = fld.from_int(sign * int(coeff_txt))
        if sym:
            if not sym.startswith("e"):
                raise ParseError(f"expected e<d> term, got {sym!r}")
            d = int(sym[1:])
            acc = acc + elem_sym(n, d, fld).scale(coeff)
        else:
            acc = acc + Poly.const(n, fld, coeff)
    return acc


REFUTERS = {
    "linear-shifted": lambda inst: refute_linear_frobenius(inst.axioms[0], inst.tower),
    "linear-base": lambda inst: refute_linear_lowdegree(inst.axioms[0]),
    "sparse-shifted": lambda inst: refute_sparse(inst.axioms[0], inst.tower),
    "symmetric": lambda inst: refute_symmetric_system(inst.axioms),
}


@cli.command()
@click.option("--family", required=True,
              type=click.Choice(sorted(REFUTERS)))
@click.option("--p", type=int, required=True)
@click.option("--k", type=int, default=1, show_default=True)
@click.option("--n", type=int, required=True)
@click.option("--m", type=int, default=1, show_default=True,
              help="Number of axioms (symmetric family).")
@click.option("--seed", type=int, default=None)
@click.option("--poly", "polys", multiple=True,
              help="Explicit symmetric polynomial, e.g. 'e1+e2+1' (repeatable).")
@_common_options
def refute(family, p, k, n, m, seed, polys, out, fmt, canonical):
    """Construct a certificate for a generated or explicit instance."""
    inst = _build_instance(family, p, k, n, m, seed, polys)
    result = REFUTERS[family](inst)
    if isinstance(result, NoCertificateAtDegree):
        raise MathFailure(
            "no_certificate_at_degree",
            f"no certificate at degree bound {result.degree_bound}: {result.detail}",
        )
    report = verify(inst, result)
    if not report.ok:
        raise AssertionError("freshly constructed certificate failed verification")
    payload = certificate_to_dict(inst, result)
    payload["run_config"] = _run_config(
        "refute", family=family, p=p, k=k, n=n, m=m, seed=seed,
        poly=list(polys) or None, format=fmt, out=out,
    )
    stats = payload["stats"]
    _emit(payload, out, fmt, canonical, text_lines=[
        f"family: {family}",
        f"field: {payload['field']}",
        f"axioms: {len(inst.axioms)}",
        f"valid: True",
        f"max degree: {stats['max_degree']}",
        f"total sparsity: {stats['total_sparsity']}",
        f"modeled depth: {stats['modeled_depth']}",
    ])


@cli.command(name="verify")
@click.argument("certificate", type=click.Path(exists=True, dir_okay=False))
@click.option("--instance", "instance_path",
              type=click.Path(exists=True, dir_okay=False), default=None,
              help="Instance file to cross-check against the certificate.")
@_common_options
def verify_cmd(certificate, instance_path, out, fmt, canonical):
    """Re-verify a certificate file; exit 0 iff the identity holds exactly."""
    with open(certificate) as fh:
        data = json.load(fh)
    inst, cert = certificate_from_dict(data)
    if instance_path is not None:
        with open(instance_path) as fh:
            inst_data = json.load(fh)
        if inst_data.get("field") != data.get("field"):
            raise FieldMismatch(
                f"instance declares {inst_data.get('field')}, "
                f"certificate declares {data.get('field')}"
            )
        declared = inst_data.get("polys", inst_data.get("instance", []))
        if declared != data.get("instance"):
            raise MathFailure("instance_mismatch",
                              "instance polynomials differ from the certificate's")
    report = verify(inst, cert)
    payload = {
        "valid": report.ok,
        "residual": format_poly(report.residual, inst.var_names),
        "stats": report.stats.to_dict(),
        "run_config": _run_config("verify", certificate=certificate,
                                  instance=instance_path, format=fmt),
    }
    _emit(payload, out, fmt, canonical, text_lines=[
        f"valid: {report.ok}",
        f"residual: {payload['residual']}",
        f"max degree: {report.stats.max_degree}",
    ])
    if not report.ok:
        raise MathFailure("not_a_certificate", "nonzero residual")


@cli.command()
@click.option("--family", required=True,
              type=click.Choice(sorted(REFUTERS)))
@click.option("--p", type=int, required=True)
@click.option("--k", type=int, default=1, show_default=True)
@click.option("--n", type=int, required=True)
@click.option("--m", type=int, default=1, show_default=True)
@click.option("--seed", type=int, default=None)
@click.option("--poly", "polys", multiple=True)
@_common_options
def gen(family, p, k, n, m, seed, polys, out, fmt, canonical):
    """Generate an instance file without refuting it."""
    inst = _build_instance(family, p, k, n, m, seed, polys)
    payload = {
        "field": inst.field.text(),
        "n": inst.n,
        "var_names": list(inst.var_names),
        "meta": inst.meta,
        "polys": [format_poly(f, inst.var_names) for f in inst.axioms],
        "run_config": _run_config("gen", family=family, p=p, k=k, n=n, m=m,
                                  seed=seed, format=fmt),
    }
    if inst.tower is not None:
        payload["tower"] = {
            "base": inst.tower.base.text(),
            "ext": inst.tower.ext.text(),
            "embed_table": [list(r) for r in inst.tower.embed_table],
        }
    _emit(payload, out, fmt, canonical)


# ---------------------------------------------------------------------------
# oracles

@cli.command()
@click.argument("kind", type=click.Choice([
    "degree-trial", "scan", "sparsity", "top-coeff", "numerator",
    "rank", "eval-dim", "roabp-width",
]))
@click.option("--p", type=int, default=2, show_default=True)
@click.option("--k", type=int, default=1, show_default=True)
@click.option("--n", type=int, required=True)
@click.option("--trials", type=int, default=100, show_default=True)
@click.option("--seed", type=int, default=None)
@click.option("--scan-all", is_flag=True,
              help="degree-trial: require every restriction to reach full degree.")
@click.option("--instance", "inst_kind", default="fixed-order",
              type=click.Choice(["fixed-order", "any-order"]),
              help="Lifted instance family for rank/eval-dim/roabp-width.")
@_common_options
def oracle(kind, p, k, n, trials, seed, scan_all, inst_kind, out, fmt, canonical):
    """Run a lower-bound oracle and report empirical values next to the bound."""
    cfg = _run_config("oracle", kind=kind, p=p, k=k, n=n, trials=trials,
                      seed=seed, scan_all=scan_all or None,
                      instance=inst_kind if kind in ("rank", "eval-dim", "roabp-width") else None)
    if kind == "numerator":
        fld = gf.field_spec(p, k)
        value = numerator_monomial_check(n, fld)
        payload = {"coefficient_is_one": value == fld.one(),
                   "coefficient": format_elem(value),
                   "run_config": cfg}
        _emit(payload, out, fmt, canonical)
        return
    if seed is None:
        raise click.UsageError("--seed is mandatory for randomized oracles")
    tower = gf.field_tower(p, k)
    rng = random.Random(seed)
    if kind == "degree-trial":
        report = degree_trial(n, tower, trials, seed, scan_all=scan_all)
        payload = report.to_dict()
        payload["run_config"] = cfg
        _emit(payload, out, fmt, canonical, text_lines=[
            f"trials: {report.trials}",
            f"successes: {report.successes}",
            f"empirical rate: {report.empirical_rate:.4f}",
            f"bound: {report.bound:.4f}" + (" (vacuous)" if report.vacuous else ""),
        ])
        return
    if kind in ("scan", "sparsity", "top-coeff"):
        alphas = [tower.base.sample(rng) for _ in range(n)]
        beta = tower.sample_beta(rng)
        if kind == "scan":
            scan = restricted_degree_scan(alphas, beta, tower)
            payload = {"all_full_degree": scan.all_full, "checked": scan.checked,
                       "failing": [list(u) for u in scan.failing],
                       "worst": list(scan.worst) if scan.worst else None,
                       "run_config": cfg}
        elif kind == "sparsity":
            sparsity, bound = sparsity_probe(alphas, beta, tower)
            payload = {"sparsity": sparsity, "bound": bound,
                       "meets_bound": sparsity >= bound, "run_config": cfg}
        else:
            rep = top_coeff(alphas, beta, tower)
            payload = {"agree": rep.agree, "run_config": cfg}
        _emit(payload, out, fmt, canonical)
        return
    # rank / eval-dim / roabp-width over a lifted instance
    inst = lifted_instance(inst_kind, n, tower, rng)
    values = [inst.poly.eval_cube_point(mask) for mask in range(1 << inst.n_vars)] \
        if inst.n_vars <= 20 else None
    if values is None:
        raise BudgetExceeded("lifted instance too large to interpolate")
    g = cube_interpolate(_batch_inverse(values), inst.n_vars, tower.ext)
    if inst_kind == "fixed-order":
        partition = (inst.x_vars(), inst.y_vars())
    else:
        m2 = 2 * inst.nx
        partition = (list(range(inst.nx)), list(range(inst.nx, m2)) +
                     list(range(m2, inst.n_vars)))
    if kind == "rank":
        value = coefficient_matrix(g, partition).rank()
        payload = {"rank": value, "bound": 2 ** inst.nx,
                   "meets_bound": value >= 2 ** inst.nx}
    elif kind == "eval-dim":
        value = eval_dimension(g, partition)
        payload = {"eval_dimension": value, "bound": 2 ** inst.nx,
                   "meets_bound": value >= 2 ** inst.nx}
    else:
        order = list(range(inst.n_vars))
        payload = {"width": roabp_width(g, order), "order": order,
                   "bound": 2 ** inst.nx}
        payload["meets_bound"] = payload["width"] >= payload["bound"]
    payload["run_config"] = cfg
    _emit(payload, out, fmt, canonical)


# ---------------------------------------------------------------------------
# experiments

@cli.command()
@click.argument("suite", type=click.Choice(["acceptance", "sweep-frobenius"]))
@click.option("--seed", type=int, default=acceptance.DEFAULT_SEED, show_default=True)
@click.option("--only", type=int, default=None, help="Run a single criterion id.")
@_common_options
def experiment(suite, seed, only, out, fmt, canonical):
    """Run a named suite; prints one pass/fail line per criterion."""
    if suite == "acceptance":
        results = acceptance.run_all(seed, only)
        payload = {
            "suite": "acceptance",
            "results": [r.to_dict() for r in results],
            "all_passed": all(r.passed for r in results),
            "run_config": _run_config("experiment", suite=suite, seed=seed, only=only),
        }
        lines = [r.line() for r in results]
        lines.append(f"all passed: {payload['all_passed']}")
        _emit(payload, out, fmt, canonical, text_lines=lines)
        for r in results:
            click.echo(r.line(), err=True)
        if not payload["all_passed"]:
            raise MathFailure("acceptance_failed", "one or more criteria failed")
        return
    # sweep-frobenius: a quick grid with max certificate degrees
    rows = []
    for p in (2, 3):
        for k in (1, 2):
            tower = gf.field_tower(p, k)
            for n in range(1, 5):
                worst = 0
                ok = True
                for s in range(2):
                    rng = random.Random(acceptance.derive_seed(seed, f"sweep:{p}:{k}:{n}:{s}"))
                    inst = generators.linear_shifted(tower, n, rng)
                    cert = refute_linear_frobenius(inst.axioms[0], tower)
                    ok = ok and verify(inst, cert).ok
                    worst = max(worst, max(cert.A[0].degree(), 0))
                rows.append({"p": p, "k": k, "n": n, "max_degree": worst,
                             "degree_bound_kp": k * p, "verified": ok})
    payload = {"suite": "sweep-frobenius", "rows": rows,
               "run_config": _run_config("experiment", suite=suite, seed=seed)}
    lines = ["p k n max_degree bound verified"] + [
        f"{r['p']} {r['k']} {r['n']} {r['max_degree']} {r['degree_bound_kp']} {r['verified']}"
        for r in rows
    ]
    _emit(payload, out, fmt, canonical, text_lines=lines)


# ---------------------------------------------------------------------------
# entry point with the documented exit codes

def main(argv=None) -> int:
    try:
        cli(args=argv, standalone_mode=False)
        return EXIT_OK
    except MathFailure as exc:
        sys.stdout.write(_canonical_json({"error": exc.code, "message": str(exc)}))
        return EXIT_MATH
    except (SatisfiableInstance, SatisfiableSystem, BetaInSubfield) as exc:
        code = {
            SatisfiableInstance: "satisfiable_instance",
            SatisfiableSystem: "satisfiable_system",
            BetaInSubfield: "beta_in_subfield",
        }[type(exc)]
        sys.stdout.write(_canonical_json({"error": code, "message": str(exc)}))
        return EXIT_MATH
    except (ParseError, FieldMismatch, BudgetExceeded, json.JSONDecodeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except click.ClickException as exc:
        exc.show(file=sys.stderr)
        return EXIT_USAGE
    except click.Abort:
        return EXIT_USAGE
    except IpsforgeError as exc:
        sys.stderr.write(f"internal error: {exc}\n")
        return EXIT_INTERNAL
    except Exception as exc:  # pragma: no cover - defensive
        sys.stderr.write(f"internal error: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
