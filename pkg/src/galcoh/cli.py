"""Command-line front end.

Inputs are JSON documents::

    {"group":  {"kind": "cyclic", "order": 4}
             | {"kind": "table", "table": [[...]], "generators": {"a": 1}}
             | {"kind": "product", "factors": [<group>, ...]},
     "module": {"invariants": [d1, ...], "action": {"<generator>": [[...]]}},
     "subgroup": [element, ...],           # maps, shapiro
     "submodule": [[vector], ...],         # les
     "field": {"p": 2, "e": 1, "f": 1, "a": 1}, "l": 2,      # local
     "places": [{"kind": "real", "module": <module>}
              | {"kind": "complex", "invariants": [...]}, ...],    # arch, global-ledger
     "module_order": m, "orders": [h0, h1, h2], "dual_orders": [...]}   # global-ledger

A report emitted with ``--format json`` is itself a valid input: its
``inputs_echo`` is replayed, which reproduces the report byte for byte.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

from .abelian import FinAbGroup
from .archimedean import (ArchPlace, GlobalLedger, InvalidPlace, arch_euler_check,
                          arch_tate_chi_check, global_ledger_check)
from .cohomology import (DEFAULT_BUDGET, BudgetExceeded, Check, ShortExactSequence, cohomology,
                         cor_res_check, herbrand_check, inflation_restriction_checks,
                         les_checks, restriction_map, shapiro_check, shapiro_map,
                         tate_closed_forms, tate_cohomology)
from .gmodule import (FiniteGroup, GModule, GroupAxiomError, ModuleAxiomError, NotASubgroup,
                      fixed_points, quotient_module, restrict_module, submodule)
from .localfield import (InvalidField, LocalFieldModel, chi_predicted, kummer_dims,
                         trivial_case_profile)
from .reptheory import ModularModule, composition_series, groth_class, is_simple
from .suites import SUITES

COMMANDS = ("cohomology", "tate", "maps", "shapiro", "les", "reptheory", "local", "arch",
            "global-ledger", "verify")

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

DEFAULTS = {"seed": 0, "trials": 100, "max_order": None, "budget": DEFAULT_BUDGET,
            "degree": None, "p": None, "e": None, "f": None, "a": None, "l": None,
            "suite": None}


class InputError(ValueError):
    """Malformed or inconsistent input; the message carries a line number when known."""


@dataclass
class JobSpec:
    command: str
    inputs: dict[str, Any] = field(default_factory=dict)
    options: dict[str, Any] = field(default_factory=dict)
    document: Any = None


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------


class _Locator:
    """Maps JSON keys back to line numbers of the source text."""

    def __init__(self, text: str):
        self.lines = text.splitlines() or [""]

    def line(self, *keys: str) -> int:
        # first line mentioning the last key after the earlier keys, in order
        start = 0
        hit = 1
        for k in keys:
            pat = re.compile(r'"' + re.escape(str(k)) + r'"')
            for i in range(start, len(self.lines)):
                if pat.search(self.lines[i]):
                    hit, start = i + 1, i
                    break
        return hit

    def error(self, msg: str, *keys: str) -> InputError:
        return InputError(f"line {self.line(*keys)}: {msg}")


def _int(v, what: str, loc: _Locator, *keys) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise loc.error(f"{what} must be an integer, got {v!r}", *keys)
    return v


def _parse_group(spec, loc: _Locator, keys=("group",)) -> FiniteGroup:
    if not isinstance(spec, dict) or "kind" not in spec:
        raise loc.error("group must be an object with a 'kind'", *keys)
    kind = spec["kind"]
    try:
        if kind == "cyclic":
            n = _int(spec.get("order"), "cyclic order", loc, *keys, "order")
            if n < 1:
                raise loc.error("cyclic order must be >= 1", *keys, "order")
            return FiniteGroup.cyclic(n)
        if kind == "table":
            table = spec.get("table")
            if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
                raise loc.error("table must be a list of rows", *keys, "table")
            gens = spec.get("generators")
            if isinstance(gens, list):
                gens = {str(g): g for g in gens}
            return FiniteGroup(table, gens)
        if kind == "product":
            factors = spec.get("factors")
            if not isinstance(factors, list) or not factors:
                raise loc.error("product needs a non-empty 'factors' list", *keys, "factors")
            return FiniteGroup.product(*(_parse_group(f, loc, keys + ("factors",)) for f in factors))
    except (GroupAxiomError, ValueError, TypeError) as exc:
        if isinstance(exc, InputError):
            raise
        raise loc.error(f"group axioms: {exc}", *keys) from None
    raise loc.error(f"unknown group kind {kind!r}", *keys, "kind")


def _resolve_generator(G: FiniteGroup, name: str, loc: _Locator, keys) -> int:
    if name in G.generators:
        return G.generators[name]
    if re.fullmatch(r"\d+", name) and int(name) < G.order:
        return int(name)
    raise loc.error(f"unknown generator {name!r}; known: {sorted(G.generators)}", *keys)


def _parse_module(G: FiniteGroup, spec, loc: _Locator, keys=("module",)) -> GModule:
    if not isinstance(spec, dict) or "invariants" not in spec:
        raise loc.error("module must be an object with 'invariants'", *keys)
    inv = spec["invariants"]
    if not isinstance(inv, list):
        raise loc.error("invariants must be a list", *keys, "invariants")
    try:
        A = FinAbGroup(*[_int(d, "invariant factor", loc, *keys, "invariants") for d in inv])
    except ValueError as exc:
        if isinstance(exc, InputError):
            raise
        raise loc.error(str(exc), *keys, "invariants") from None
    r = A.rank
    d = np.asarray(A.invariant_factors, dtype=np.int64)[:, None]
    action = spec.get("action", {})
    if not isinstance(action, dict):
        raise loc.error("action must map generator names to matrices", *keys, "action")
    names = {g: n for n, g in G.generators.items()}
    mats: dict[int, np.ndarray] = {}
    for name, m in action.items():
        g = _resolve_generator(G, str(name), loc, keys + ("action", name))
        names.setdefault(g, str(name))
        try:
            X = np.asarray(m, dtype=np.int64)
        except (ValueError, TypeError):
            raise loc.error(f"action of {name!r} is not an integer matrix", *keys, "action", name) from None
        if X.size != r * r or (r and X.shape != (r, r)):
            raise loc.error(f"action of {name!r} must be {r}x{r}", *keys, "action", name)
        X = X.reshape(r, r)
        if r:
            k = G.element_order(g)
            P = np.eye(r, dtype=np.int64)
            for _ in range(k):
                P = np.mod(P @ X, d)
            if not np.array_equal(P, np.mod(np.eye(r, dtype=np.int64), d)):
                raise loc.error(f"action of {name!r} violates {name}^{k} = 1", *keys, "action", name)
        mats[g] = X
    for g in G.generators.values():
        mats.setdefault(g, np.eye(r, dtype=np.int64))
    try:
        return GModule.from_generators(G, A, mats)
    except ModuleAxiomError as exc:
        raise loc.error(f"module axioms: {_name_elements(str(exc), names)}", *keys, "action") from None


def _name_elements(msg: str, names: dict[int, str]) -> str:
    """Replace element indices in ``A(i)``, ``A(i*j)`` and ``element i`` by generator names."""
    nm = lambda i: names.get(int(i), i)                         # noqa: E731
    msg = re.sub(r"A\((\d+)\*(\d+)\)", lambda m: f"A({nm(m.group(1))}*{nm(m.group(2))})", msg)
    msg = re.sub(r"A\((\d+)\)", lambda m: f"A({nm(m.group(1))})", msg)
    return re.sub(r"element (\d+)", lambda m: f"element {nm(m.group(1))}", msg)


def _subgroup(G: FiniteGroup, spec, loc: _Locator) -> tuple[int, ...]:
    if not isinstance(spec, list):
        raise loc.error("subgroup must be a list of elements", "subgroup")
    els = []
    for x in spec:
        if isinstance(x, str):
            els.append(_resolve_generator(G, x, loc, ("subgroup",)))
        else:
            x = _int(x, "subgroup element", loc, "subgroup")
            if not 0 <= x < G.order:
                raise loc.error(f"{x} is not an element of the group", "subgroup")
            els.append(x)
    return tuple(sorted(G.generated_subgroup(els)))


def _field(doc: dict, opts: dict, loc: _Locator) -> LocalFieldModel:
    spec = dict(doc.get("field", {})) if isinstance(doc, dict) else {}
    for k in ("p", "e", "f", "a"):
        if opts.get(k) is not None:
            spec[k] = opts[k]
    if "p" not in spec:
        raise InputError("local field needs --p (or an input 'field')")
    spec.setdefault("e", 1)
    spec.setdefault("f", 1)
    spec.setdefault("a", 0)
    try:
        return LocalFieldModel(*(_int(spec[k], k, loc, "field", k) for k in ("p", "e", "f", "a")))
    except InvalidField as exc:
        raise loc.error(str(exc), "field") from None


def parse_spec(text: str, command: str = "cohomology", options: dict | None = None) -> JobSpec:
    """Validate an input document for ``command``.

    Raises :class:`InputError` with a ``line N`` prefix on malformed JSON or
    on violated group or module axioms.
    """
    if command not in COMMANDS:
        raise InputError(f"unknown command {command!r}")
    opts = dict(DEFAULTS)
    doc = None
    if text is not None and text.strip():
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
        if isinstance(doc, dict) and "inputs_echo" in doc:
            echo = doc["inputs_echo"] or {}
            opts.update({k: v for k, v in (echo.get("options") or {}).items() if k in DEFAULTS})
            doc = echo.get("input")
            text = json.dumps(doc, indent=1)
    opts.update({k: v for k, v in (options or {}).items() if v is not None})
    for k in ("budget", "trials", "max_order"):
        if opts.get(k) is not None and (not isinstance(opts[k], int) or opts[k] < 1):
            raise InputError(f"--{k.replace('_', '-')} must be a positive integer")
    loc = _Locator(text or "")
    if doc is not None and not isinstance(doc, dict):
        raise InputError("line 1: input must be a JSON object")
    doc = doc or {}
    inputs: dict[str, Any] = {}
    if "group" in doc:
        inputs["group"] = _parse_group(doc["group"], loc)
    if "module" in doc:
        if "group" not in inputs:
            raise loc.error("a module needs a group", "module")
        inputs["module"] = _parse_module(inputs["group"], doc["module"], loc)
    elif "group" in inputs and command not in ("local", "verify"):
        inputs["module"] = GModule.trivial(inputs["group"], FinAbGroup())
    if "subgroup" in doc:
        inputs["subgroup"] = _subgroup(inputs["group"], doc["subgroup"], loc)
    if "submodule" in doc:
        gens = doc["submodule"]
        if not isinstance(gens, list) or not all(isinstance(v, list) for v in gens):
            raise loc.error("submodule must be a list of vectors", "submodule")
        M = inputs["module"]
        if any(len(v) != M.rank for v in gens):
            raise loc.error(f"submodule vectors must have length {M.rank}", "submodule")
        inputs["submodule"] = [[int(x) for x in v] for v in gens]
    if "places" in doc:
        inputs["places"] = _parse_places(doc["places"], loc)
    for k in ("module_order", "orders", "dual_orders"):
        if k in doc:
            inputs[k] = doc[k]
    if "l" in doc and opts.get("l") is None:
        opts["l"] = _int(doc["l"], "l", loc, "l")
    _require(command, inputs, opts, doc, loc)
    return JobSpec(command, inputs, opts, doc if doc else None)


def _parse_places(spec, loc: _Locator) -> list[ArchPlace]:
    if not isinstance(spec, list):
        raise loc.error("places must be a list", "places")
    out = []
    for i, pl in enumerate(spec):
        kind = pl.get("kind") if isinstance(pl, dict) else None
        try:
            if kind == "real":
                M = _parse_module(FiniteGroup.cyclic(2), pl.get("module"), loc, ("places", "module"))
                out.append(ArchPlace("real", M))
            elif kind == "complex":
                inv = pl.get("invariants", [])
                out.append(ArchPlace.complex(FinAbGroup(*inv)))
            else:
                raise loc.error(f"place {i}: kind must be 'real' or 'complex'", "places")
        except (InvalidPlace, ValueError) as exc:
            if isinstance(exc, InputError):
                raise
            raise loc.error(f"place {i}: {exc}", "places") from None
    return out


def _require(command: str, inputs: dict, opts: dict, doc: dict, loc: _Locator):
    need = {"cohomology": ("group",), "tate": ("group",), "maps": ("group", "subgroup"),
            "shapiro": ("group", "subgroup"), "les": ("group", "module", "submodule"),
            "reptheory": ("group", "module"),
            "global-ledger": ("places", "module_order", "orders")}.get(command, ())
    for k in need:
        if k not in inputs:
            raise InputError(f"command {command!r} needs an input '{k}'")
    if command == "arch" and "places" not in inputs and "group" not in inputs:
        raise InputError("command 'arch' needs an input 'group' (with 'module') or 'places'")
    if command == "arch" and "places" not in inputs and inputs["group"].order != 2:
        raise loc.error("an archimedean place is a module over the group of order 2", "group")
    if command == "global-ledger":
        for k in ("orders", "dual_orders"):
            v = inputs.get(k)
            if v is not None and (not isinstance(v, list) or len(v) != 3
                                  or not all(isinstance(x, int) and x >= 1 for x in v)):
                raise loc.error(f"{k} must be three positive integers", k)
        if not isinstance(inputs["module_order"], int) or inputs["module_order"] < 1:
            raise loc.error("module_order must be a positive integer", "module_order")
    if command == "local":
        inputs["field"] = _field(doc, opts, loc)
        if opts.get("l") is None:
            raise InputError("local needs --l")
    if command == "verify":
        suite = opts.get("suite")
        if suite not in tuple(SUITES) + ("all",):
            raise InputError(f"unknown suite {suite!r}; choose from {sorted(SUITES)} or 'all'")


# ---------------------------------------------------------------------------
# running
# ---------------------------------------------------------------------------


def _result(name: str, A: FinAbGroup) -> dict:
    return {"name": name, "invariant_factors": list(A.invariant_factors), "order": A.order}


def _plain(x):
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return _plain(x.tolist())
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    return x


def _degrees(opts: dict, default) -> list[int]:
    return [opts["degree"]] if opts.get("degree") is not None else list(default)


def _run_cohomology(job: JobSpec):
    M, b = job.inputs["module"], job.options["budget"]
    results, checks = [], []
    for n in _degrees(job.options, range(3)):
        if n < 0:
            raise InputError("bar cohomology needs degree >= 0; use 'tate' for negative degrees")
        H = cohomology(M, n, b, seed=job.options["seed"])
        results.append(_result(f"H^{n}(G, M)", H.group))
        if n == 0:
            F, _ = fixed_points(M)
            checks.append(Check("H^0 = M^G", H.invariant_factors == F.invariant_factors,
                                list(H.invariant_factors), list(F.invariant_factors)))
        elif M.group.is_cyclic():
            even, odd = tate_closed_forms(M)
            want = even if n % 2 == 0 else odd
            checks.append(Check(f"H^{n} matches the cyclic closed form",
                                H.invariant_factors == want.invariant_factors,
                                list(H.invariant_factors), list(want.invariant_factors)))
    return results, checks


def _run_tate(job: JobSpec):
    M, b = job.inputs["module"], job.options["budget"]
    results, checks = [], []
    for n in _degrees(job.options, range(-1, 3)):
        H = tate_cohomology(M, n, b)
        results.append(_result(f"H^{n}_T(G, M)", H.group))
    if M.group.is_cyclic():
        checks.append(herbrand_check(M))
    return results, checks


def _run_maps(job: JobSpec):
    M, U, b = job.inputs["module"], job.inputs["subgroup"], job.options["budget"]
    G = M.group
    results, checks = [], []
    for n in _degrees(job.options, range(3)):
        res = restriction_map(M, U, n, b)
        results.append(_result(f"H^{n}(G, M)", res.domain))
        results.append(_result(f"H^{n}(U, M)", res.codomain))
        results.append(_result(f"res(H^{n}(G, M))", res.image()[0]))
        checks.append(cor_res_check(M, U, n, b))
    if G.is_normal(U) and job.options.get("degree") is None:
        checks.extend(inflation_restriction_checks(M, U, b))
    return results, checks


def _run_shapiro(job: JobSpec):
    M, U, b = job.inputs["module"], job.inputs["subgroup"], job.options["budget"]
    G = M.group
    N = restrict_module(M, U)
    results, checks = [], []
    for n in _degrees(job.options, range(3)):
        sh, _ = shapiro_map(G, U, N, n, b)
        results.append(_result(f"H^{n}(G, Ind N)", sh.domain))
        results.append(_result(f"H^{n}(U, N)", sh.codomain))
        checks.append(shapiro_check(G, U, N, n, b))
    return results, checks


def _run_les(job: JobSpec):
    M, b = job.inputs["module"], job.options["budget"]
    try:
        L, inc = submodule(M, job.inputs["submodule"])
        N, proj = quotient_module(M, [inc.matrix.column(j) for j in range(L.rank)])
        ses = ShortExactSequence(L, M, N, inc, proj)
    except (ModuleAxiomError, ValueError) as exc:
        raise InputError(f"submodule: {exc}") from None
    results = [_result("L", L.carrier), _result("M/L", N.carrier)]
    for n in range(3):
        for tag, X in (("L", L), ("M", M), ("M/L", N)):
            results.append(_result(f"H^{n}(G, {tag})", cohomology(X, n, b).group))
    return results, les_checks(ses, 2, b)


def _run_reptheory(job: JobSpec):
    M = job.inputs["module"]
    inv = set(M.carrier.invariant_factors)
    l = job.options.get("l") or (inv.pop() if len(inv) == 1 else None)
    if l is None or any(d != l for d in M.carrier.invariant_factors):
        raise InputError("reptheory needs a module whose invariants all equal a prime l")
    try:
        V = ModularModule.from_gmodule(M, l)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    factors = composition_series(V)
    results = [_result(f"composition factor {k} (dim {S.dimension})", FinAbGroup(*([l] * S.dimension)))
               for k, S in enumerate(factors)]
    base = groth_class(V)
    rng = np.random.default_rng(job.options["seed"])
    checks = [Check("factor dimensions add up", sum(S.dimension for S in factors) == V.dimension,
                    sum(S.dimension for S in factors), V.dimension)]
    checks += [Check("each factor is simple", all(is_simple(S) for S in factors), True, True)]
    for t in range(3):
        other = groth_class(V, seed=int(rng.integers(1 << 30)))
        checks.append(Check(f"factors stable under permutation {t + 1}", other == base,
                            other.multiplicities(), base.multiplicities()))
    return results, checks


def _run_local(job: JobSpec):
    K, l = job.inputs["field"], job.options["l"]
    try:
        kd = kummer_dims(K, l)
        triv, cyc = trivial_case_profile(K, l, "trivial"), trivial_case_profile(K, l, "cyclotomic")
    except ValueError as exc:
        raise InputError(str(exc)) from None
    el = lambda k: FinAbGroup(*([l] * k))                     # noqa: E731
    results = [_result(f"K^x/(K^x)^{l} (dim {kd})", el(kd))]
    for tag, prof in (("F_l", triv), ("mu_l", cyc)):
        for n, h in enumerate((prof.h0, prof.h1, prof.h2)):
            results.append(_result(f"H^{n}(K, {tag})", el(h)))
    pred = chi_predicted(K, l, 1)
    checks = [Check("chi(F_l) = predicted", triv.chi == pred, triv.chi, pred),
              Check("chi(mu_l) = predicted", cyc.chi == pred, cyc.chi, pred)]
    return results, checks


def _run_arch(job: JobSpec):
    if "places" in job.inputs:
        results, checks = [], []
        for i, v in enumerate(job.inputs["places"]):
            results.append(_result(f"place {i} ({v.kind}): H^0(G_v, M)", cohomology(v.module, 0).group))
            checks += [arch_euler_check(v), arch_tate_chi_check(v)]
        return results, checks
    M = job.inputs["module"]
    try:
        place = ArchPlace("real", M)
    except InvalidPlace as exc:
        raise InputError(str(exc)) from None
    results = [_result("H^0(R, M)", cohomology(M, 0).group),
               _result("H^0(R, M*(1))", cohomology(place.twisted_dual(), 0).group),
               _result("H^1(R, M)", cohomology(M, 1).group)]
    complex_place = ArchPlace.complex(M.carrier)
    return results, [arch_euler_check(place), arch_tate_chi_check(place),
                     arch_euler_check(complex_place)]


def _run_global_ledger(job: JobSpec):
    places = job.inputs["places"]
    try:
        ledger = GlobalLedger(places, job.inputs["module_order"], tuple(job.inputs["orders"]),
                              tuple(job.inputs["dual_orders"]) if job.inputs.get("dual_orders") else None)
        checks, info = global_ledger_check(ledger)
    except (InvalidPlace, ValueError) as exc:
        raise InputError(str(exc)) from None
    results = [_result(f"H^0(G_v, M) at place {i} ({v.kind})", cohomology(v.module, 0).group)
               for i, v in enumerate(places)]
    return results, checks


def _run_verify(job: JobSpec):
    o = job.options
    names = sorted(SUITES) if o["suite"] == "all" else [o["suite"]]
    checks = []
    for name in names:
        kw = {"seed": o["seed"], "trials": o["trials"]}
        if o.get("max_order") is not None:
            kw["max_order"] = o["max_order"]
        for c in SUITES[name](**kw):
            checks.append(Check(f"{name}: {c.name}", c.passed, c.lhs, c.rhs))
    return [], checks


RUNNERS = {"cohomology": _run_cohomology, "tate": _run_tate, "maps": _run_maps,
           "shapiro": _run_shapiro, "les": _run_les, "reptheory": _run_reptheory,
           "local": _run_local, "arch": _run_arch, "global-ledger": _run_global_ledger,
           "verify": _run_verify}


def run(job: JobSpec) -> dict:
    """Execute a validated job; the report follows the published JSON schema."""
    results, checks = RUNNERS[job.command](job)
    echo_opts = {k: job.options.get(k) for k in DEFAULTS}
    return {"command": job.command,
            "inputs_echo": {"input": job.document, "options": echo_opts},
            "results": _plain(results),
            "checks": [_plain(c.as_dict()) for c in checks]}


def report_exit_code(report: dict) -> int:
    return EXIT_OK if all(c["pass"] for c in report["checks"]) else EXIT_FAIL


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


def render_text(report: dict) -> str:
    out = [f"command: {report['command']}"]
    if report["results"]:
        width = max(len(r["name"]) for r in report["results"])
        out.append("results:")
        for r in report["results"]:
            grp = " + ".join(f"Z/{d}" for d in r["invariant_factors"]) or "0"
            out.append(f"  {r['name']:<{width}}  {grp:<24} order {r['order']}")
    checks = report["checks"]
    if checks:
        failed = [c for c in checks if not c["pass"]]
        shown = checks if len(checks) <= 40 else failed
        out.append("checks:")
        for c in shown:
            out.append(f"  [{'pass' if c['pass'] else 'FAIL'}] {c['name']}: {c['lhs']} vs {c['rhs']}")
        if len(checks) > 40:
            counts: dict[str, list[int]] = {}
            for c in checks:
                key = c["name"].split(":", 1)[0]
                counts.setdefault(key, [0, 0])
                counts[key][0] += c["pass"]
                counts[key][1] += 1
            for key, (p, t) in counts.items():
                out.append(f"  {key}: {p}/{t} pass")
        out.append(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", metavar="FILE", help="JSON input ('-' for stdin)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int)
    common.add_argument("--trials", type=int)
    common.add_argument("--max-order", type=int, dest="max_order")
    common.add_argument("--budget", type=int)
    common.add_argument("--degree", type=int)
    for k in ("p", "e", "f", "a", "l"):
        common.add_argument(f"--{k}", type=int)
    ap = argparse.ArgumentParser(prog="galcoh", description="Cohomology of finite Galois modules.")
    sub = ap.add_subparsers(dest="command", required=True)
    for c in COMMANDS:
        sp = sub.add_parser(c, parents=[common])
        if c == "verify":
            sp.add_argument("suite", help=f"one of {', '.join(sorted(SUITES))}, or all")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    opts = {k: getattr(args, k, None) for k in DEFAULTS}
    text = None
    try:
        if args.input:
            if args.input == "-":
                text = sys.stdin.read()
            else:
                with open(args.input, encoding="utf-8") as fh:
                    text = fh.read()
        job = parse_spec(text, args.command, opts)
        report = run(job)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InputError, NotASubgroup) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    sys.stdout.write(render_json(report) if args.format == "json" else render_text(report))
    return report_exit_code(report)


def entry() -> None:
    sys.exit(main())
