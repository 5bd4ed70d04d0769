"""``cc-solve``: run the queries of a problem file.

Exit status: 0 when every query ran (and, with ``--assert``, every verdict
was positive), 1 when a query failed or an asserted verdict was negative,
2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .coherence import Interval, check_coherence
from .compound import (
    Family,
    PrevisionAssessment,
    assessment_problem,
    autofill,
    build_conjunction,
    conjoin_families,
    constituent_classes,
    prevision_interval,
)
from .dsl import ProblemFile, Query, parse_problem
from .entailment import DEFAULT_SEED, EntailmentQuery, full_report, is_p_consistent, rule
from .errors import CCError, ParseError
from .events import Outcome, outcome
from .iterated import build_iterated, product_rule_check, self_iterate_is_one, verify_caniter
from .tables import fmt

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    path: str
    json: bool = False
    seed: int = DEFAULT_SEED
    strict: bool = False
    verbose: bool = False


class _Result:
    def __init__(self, query: Query):
        self.query = query
        self.record = {"query": str(query)[len("query ") :], "line": query.line}
        self.lines = [f"# {self.record['query']}  (line {query.line})"]
        self.verdict = True  # what --assert checks

    def say(self, line: str):
        self.lines.append(line)


def _yes(b: bool) -> str:
    return "yes" if b else "no"


def _constituent_name(ctx, c: int) -> str:
    return " ".join(("" if ctx.constituent(c).assignment[n] else "~") + n for n in ctx.names)


def _names_of(pf: ProblemFile, f: Family) -> list:
    rev = {ce: n for n, ce in pf.conditionals.items()}
    return [rev.get(ce, str(ce)) for ce in f]


def _completed(pf: ProblemFile, res: _Result, f: Family) -> PrevisionAssessment:
    a = pf.prevision_assessment().restrict(f)
    full = autofill(f, a, "midpoint")
    names = dict(zip(f, _names_of(pf, f)))
    filled = []
    for S in f.subsets():
        if S not in a:
            label = " & ".join(names[ce] for ce in f if ce in S)
            filled.append({"subset": [names[ce] for ce in f if ce in S], "value": full[S]})
            res.say(f"filled P({label}) = {fmt(full[S])} (midpoint of its coherent interval)")
    res.record["filled"] = filled
    return full


def _pattern_label(pattern) -> str:
    out = []
    for i, o in enumerate(pattern, start=1):
        if o is Outcome.TRUE:
            out.append(f"E{i}H{i}")
        elif o is Outcome.FALSE:
            out.append(f"~E{i}H{i}")
        else:
            out.append(f"~H{i}")
    return " ".join(out)


def _legend(pf: ProblemFile, res: _Result, f: Family):
    names = _names_of(pf, f)
    res.record["members"] = names
    res.say("members: " + ", ".join(f"{i}={n}" for i, n in enumerate(names, start=1)))


# -- query handlers -----------------------------------------------------------


def _coherence(pf: ProblemFile, res: _Result, cfg: RunConfig):
    f = pf.assessed_family()
    if f is None:
        res.say("coherent: yes (nothing assessed)")
        res.record["coherent"] = True
        return
    a = pf.prevision_assessment()
    problem = assessment_problem(f, a)
    verdict = check_coherence(problem)
    res.record["coherent"] = verdict.coherent
    res.verdict = verdict.coherent
    res.say(f"coherent: {_yes(verdict.coherent)}")
    layers = []
    for k, layer in enumerate(verdict.layers):
        items = [problem.items[i].label for i in layer.items]
        masses = [{"constituent": _constituent_name(f.context, c), "mass": m} for c, m in layer.masses]
        layers.append({"items": items, "witness": masses})
        if cfg.verbose:
            res.say(f"layer {k}: " + ", ".join(f"{m['constituent']}: {fmt(m['mass'])}" for m in masses))
    res.record["layers"] = layers
    if not verdict.coherent:
        failed = [problem.items[i].label for i in verdict.failed_items]
        res.record["failed_items"] = failed
        res.say("no coherent layer for: " + ", ".join(failed))


def _bounds(pf: ProblemFile, res: _Result, cfg: RunConfig):
    target = [pf.conditional(n) for n in res.query.names]
    scope_names = dict.fromkeys([n for key in pf.assessments for n in key] + list(res.query.names))
    scope = pf.family(scope_names)
    interval = prevision_interval(scope, pf.prevision_assessment(), frozenset(target))
    res.record["interval"] = interval
    res.say(f"P({' & '.join(res.query.names)}) in {interval}")


def _p_consistent(pf: ProblemFile, res: _Result, cfg: RunConfig):
    names = res.query.names or tuple(pf.conditionals)
    if not names:
        raise CCError("no conditionals declared")
    ok = is_p_consistent(pf.family(names))
    res.record["p_consistent"] = ok
    res.verdict = ok
    res.say(f"p-consistent: {_yes(ok)}")


def _p_entails(pf: ProblemFile, res: _Result, cfg: RunConfig):
    q = res.query
    if q.rule:
        query = rule(q.rule)
    else:
        query = EntailmentQuery(pf.family(q.premises), pf.conditional(q.conclusion))
    res.say(f"premises: {query.premises}")
    res.say(f"conclusion: {query.conclusion}")
    report = full_report(query, seed=cfg.seed)
    res.record["p_consistent"] = report.p_consistent
    res.say(f"p-consistent: {_yes(report.p_consistent)}")
    if not report.p_consistent:
        res.record["p_valid"] = None
        res.verdict = False
        res.say("p-valid: n/a (premises are not p-consistent)")
        return
    res.record.update(report.verdicts)
    res.record["p_valid"] = report.p_valid
    res.record["interval"] = report.interval
    res.record["certificates"] = [
        {"procedure": c.procedure, "verdict": c.verdict, "detail": c.detail}
        | ({"interval": c.interval} if c.interval else {})
        | ({"assessment": _cert_assessment(c.assessment)} if c.assessment else {})
        for c in report.certificates
    ]
    res.verdict = report.p_valid
    res.say(f"premises at 1 give z in {report.interval}")
    for key, v in report.verdicts.items():
        res.say(f"{key.replace('_', ' ')}: {_yes(v)}")
    if report.p_valid:
        res.say("p-valid: yes (forced z = 1)")
    else:
        res.say(f"p-valid: no (witness: premises at 1, z = {fmt(report.interval.lo)})")


def _cert_assessment(a: PrevisionAssessment) -> list:
    return [
        {"subset": sorted(str(ce) for ce in S), "value": x}
        for S, x in sorted(a.items(), key=lambda kv: (len(kv[0]), sorted(str(ce) for ce in kv[0])))
    ]


def _iterate(pf: ProblemFile, res: _Result, cfg: RunConfig):
    f1 = pf.family(res.query.antecedent)
    f2 = pf.family(res.query.consequent)
    union = conjoin_families(f1, f2)
    _legend(pf, res, union)
    a = _completed(pf, res, union)
    ic = build_iterated(f1, f2, a)
    rows = []
    seen = {}
    for c in range(union.context.size):
        pattern = tuple(outcome(ce, union.context.constituent(c)) for ce in union)
        seen.setdefault(pattern, []).append(c)
    for pattern, cons in sorted(seen.items(), key=lambda kv: kv[1][0]):
        value = ic.table[cons[0]]
        rows.append({"class": _pattern_label(pattern), "constituents": len(cons), "value": str(value)})
    res.record["table"] = rows
    width = max(len(r["class"]) for r in rows)
    for r in rows:
        res.say(f"  {r['class']:<{width}}  {r['value']}")
    res.record["mu"] = ic.mu
    if ic.resolved:
        res.say(f"mu = {fmt(ic.mu)}")
    else:
        res.say(f"mu in {ic.mu} (not unique; table left symbolic)")
    checks = {
        "CANITER": verify_caniter(f1, f2, a),
        "CDATOC": self_iterate_is_one(f1, a.restrict(f1)),
        "product rule": product_rule_check(f1, f2, a),
    }
    res.record["checks"] = checks
    res.verdict = all(checks.values())
    for k, v in checks.items():
        res.say(f"{k}: {'pass' if v else 'FAIL'}")


def _table(pf: ProblemFile, res: _Result, cfg: RunConfig):
    f = pf.family(res.query.names)
    _legend(pf, res, f)
    a = _completed(pf, res, f)
    conj = build_conjunction(f, a)
    rows = []
    for cls in constituent_classes(f, a):
        label = "some ~EiHi" if cls.pattern is None else _pattern_label(cls.pattern)
        rows.append({"class": label, "constituents": len(cls.constituents), "value": cls.value})
    res.record["table"] = rows
    res.record["prevision"] = conj.prevision
    width = max(len(r["class"]) for r in rows)
    for r in rows:
        res.say(f"  {r['class']:<{width}}  {fmt(r['value'])}")
    res.say(f"prevision = {fmt(conj.prevision)}")


_HANDLERS = {
    "coherence": _coherence,
    "bounds": _bounds,
    "p-consistent": _p_consistent,
    "p-entails": _p_entails,
    "iterate": _iterate,
    "table": _table,
}


# -- output -------------------------------------------------------------------


def to_json(obj):
    """Plain JSON data with rationals as ``{"num": p, "den": q}``."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, int)):
        return obj
    if isinstance(obj, Fraction):
        return {"num": obj.numerator, "den": obj.denominator}
    if isinstance(obj, Interval):
        return {"lo": to_json(obj.lo), "hi": to_json(obj.hi)}
    if isinstance(obj, dict):
        return {k: to_json(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_json(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def from_json(obj):
    """Inverse of :func:`to_json` for rationals and intervals."""
    if isinstance(obj, dict):
        if set(obj) == {"num", "den"}:
            return Fraction(obj["num"], obj["den"])
        if set(obj) == {"lo", "hi"}:
            return Interval(from_json(obj["lo"]), from_json(obj["hi"]))
        return {k: from_json(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [from_json(v) for v in obj]
    return obj


def execute(pf: ProblemFile, cfg: RunConfig):
    """Run every query; returns ``(results, all queries ran, all verdicts positive)``."""
    results = []
    ran = True
    for q in pf.queries:
        res = _Result(q)
        try:
            _HANDLERS[q.kind](pf, res, cfg)
        except (CCError, KeyError, ValueError, ArithmeticError) as exc:
            ran = False
            res.verdict = False
            res.record["error"] = f"{type(exc).__name__}: {exc}"
            res.say(f"error: {type(exc).__name__}: {exc}")
        results.append(res)
    return results, ran, all(r.verdict for r in results)


def run(cfg: RunConfig, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        with open(cfg.path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"cc-solve: cannot read {cfg.path}: {exc.strerror}", file=err)
        return EXIT_USAGE
    try:
        pf = parse_problem(text)
    except ParseError as exc:
        print(f"{cfg.path}: {exc}", file=err)
        return EXIT_USAGE
    except CCError as exc:
        print(f"{cfg.path}: {type(exc).__name__}: {exc}", file=err)
        return EXIT_USAGE
    results, ran, positive = execute(pf, cfg)
    if cfg.json:
        payload = {"file": cfg.path, "seed": cfg.seed, "results": [r.record for r in results]}
        out.write(json.dumps(to_json(payload), indent=2) + "\n")
    else:
        out.write("\n\n".join("\n".join(r.lines) for r in results) + ("\n" if results else ""))
    if not ran or (cfg.strict and not positive):
        return EXIT_FAIL
    return EXIT_OK


def main(argv: Optional[list] = None) -> int:
    parser = argparse.ArgumentParser(prog="cc-solve", description="Exact coherence and p-entailment queries.")
    parser.add_argument("file", help="problem file")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for sampled verification")
    parser.add_argument(
        "--assert", dest="strict", action="store_true",
        help="exit 1 when a verdict is negative (incoherent, not p-consistent, not p-valid, failed check)",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="print witness distributions")
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    return run(RunConfig(ns.file, ns.json, ns.seed, ns.strict, ns.verbose))


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
