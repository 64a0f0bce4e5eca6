"""Truncated decision procedures for differential-difference systems.

Each procedure prolongs the system to a finite level, works in the resulting
polynomial ring, and returns an :class:`EliminationReport`.  Positive findings
(inconsistency, an x-only consequence, a shifted power membership) come with
certificates that re-expand exactly; negative findings are only valid up to
the level tried.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from .ddpoly import DSPolynomial, PolySystem, measure, prolong, sigma_shift
from .errors import ResourceBudgetExceeded, WindowTooSmall
from .field import QQ
from .groebner import Budget, MonomialOrder, buchberger, default_ranking, elimination_intersection
from .seq import SequencePoint, evaluate

DEFAULT_STEPS = 10**6
DEFAULT_SECONDS = 60.0

# verdicts; the definitive ones are sound global answers
INCONSISTENT = "inconsistent"
CONSISTENT_UP_TO = "consistent-up-to-level"
FOUND = "found"
NO_CONSEQUENCE_UP_TO = "no-consequence-up-to-level"
NO_CONSEQUENCE = "no-consequence"
MEMBER = "member"
NOT_FOUND_UP_TO = "not-found-up-to"
DEFINITIVE = {INCONSISTENT, FOUND, NO_CONSEQUENCE, MEMBER}


@dataclass
class EliminationReport:
    mode: str
    verdict: str
    levels: List[Tuple[int, int]] = field(default_factory=list)
    consequence: Optional[DSPolynomial] = None
    certificate: Optional[List[Tuple[DSPolynomial, DSPolynomial]]] = None
    m: Optional[int] = None
    steps: int = 0
    seconds: float = 0.0

    @property
    def definitive(self) -> bool:
        return self.verdict in DEFINITIVE

    def replay(self) -> DSPolynomial:
        """``sum(cofactor * generator)`` over the certificate."""
        if self.certificate is None:
            raise ValueError("report carries no certificate")
        total = None
        for c, g in self.certificate:
            total = c * g if total is None else total + c * g
        if total is None:
            return DSPolynomial.zero(self.consequence.field if self.consequence is not None else QQ)
        return total

    def to_dict(self, timings: bool = False) -> dict:
        d = {
            "mode": self.mode,
            "verdict": self.verdict,
            "definitive": self.definitive,
            "levels": [list(L) for L in self.levels],
            "consequence": None if self.consequence is None else self.consequence.to_text(),
            "certificate": None if self.certificate is None else [
                {"cofactor": c.to_text(), "generator": g.to_text()} for c, g in self.certificate],
            "m": self.m,
            "steps": self.steps,
        }
        if timings:
            d["seconds"] = round(self.seconds, 6)
        return d


def _system(F) -> PolySystem:
    if isinstance(F, PolySystem):
        return F
    return PolySystem.of(list(F))


def _budget(steps, seconds) -> Budget:
    return Budget(steps, seconds)


def _certificate(cofactors: Sequence[DSPolynomial], gens: Sequence[DSPolynomial]):
    return [(c, g) for c, g in zip(cofactors, gens) if not c.is_zero()]


def _schedule(max_level: int, schedule) -> List[Tuple[int, int]]:
    if schedule is None or schedule == "coupled":
        return [(L, L) for L in range(max_level + 1)]
    return [tuple(p) for p in schedule]


def truncated_consistency(F: Union[PolySystem, Iterable[DSPolynomial]], level: int, *,
                          sigma_level: Optional[int] = None, certificate: bool = True,
                          max_steps: Optional[int] = DEFAULT_STEPS,
                          max_seconds: Optional[float] = DEFAULT_SECONDS) -> EliminationReport:
    """Is 1 in the ideal of ``D^a S^b f`` for ``a <= level``, ``b <= sigma_level`` (default: level)?

    "inconsistent" is a proof that no sequence solution exists;
    "consistent-up-to-level" is inconclusive.
    """
    sys_ = _system(F)
    if any(v.family == "x" for v in sys_.variables()):
        raise ValueError("consistency checks expect a system in the y-unknowns only")
    dl, sl = level, level if sigma_level is None else sigma_level
    t0 = time.monotonic()
    budget = _budget(max_steps, max_seconds)
    gens = prolong(sys_.equations, dl, sl)
    report = EliminationReport("consistency", CONSISTENT_UP_TO, [(dl, sl)])
    if gens:
        G = buchberger(gens, track=certificate, budget=budget, ground=sys_.field)
        if G.is_unit():
            report.verdict = INCONSISTENT
            one = DSPolynomial.const(1, sys_.field)
            report.consequence = one
            if certificate:
                # basis is {1}; rescale cofactors to express 1 itself
                lc = G.basis[0].constant_term()
                report.certificate = _certificate([c.scale(1 / lc) for c in G.cofactors_of(0)], G.generators)
    report.steps = budget.steps
    report.seconds = time.monotonic() - t0
    return report


def x_variables(polys: Iterable[DSPolynomial]) -> set:
    out = set()
    for p in polys:
        out |= {v for v in p.variables() if v.family == "x"}
    return out


def iterative_deepening_eliminate(F: Union[PolySystem, Iterable[DSPolynomial]], max_level: int, *,
                                  schedule=None, bound: Optional[int] = None,
                                  max_steps: Optional[int] = DEFAULT_STEPS,
                                  max_seconds: Optional[float] = DEFAULT_SECONDS) -> EliminationReport:
    """Search for a nonzero consequence in the x-unknowns alone.

    For each level pair of the schedule (default ``(L, L)`` for
    ``L = 0..max_level``) the system is prolonged and intersected with the
    polynomial ring of the x-variables present.  The first nonzero
    intersection is reported with its minimal generator and a certificate.
    When ``bound`` is given and ``max_level >= bound``, an empty result is
    reported as the definitive "no-consequence".
    """
    sys_ = _system(F)
    t0 = time.monotonic()
    report = EliminationReport("eliminate", NO_CONSEQUENCE_UP_TO)
    total_steps = 0
    last_done = None
    for dl, sl in _schedule(max_level, schedule):
        budget = _budget(max_steps, max_seconds)
        gens = prolong(sys_.equations, dl, sl)
        keep = x_variables(gens)
        try:
            found, G = elimination_intersection(gens, keep, track=True, budget=budget, return_basis=True)
        except ResourceBudgetExceeded as exc:
            exc.last_level = last_done
            exc.steps = total_steps + budget.steps
            raise
        total_steps += budget.steps
        report.levels.append((dl, sl))
        last_done = (dl, sl)
        if found:
            key = G.order.key
            idx = min((G.basis.index(g) for g in found), key=lambda i: key(G.leading_monomials()[i]))
            report.verdict = FOUND
            report.consequence = G.basis[idx]
            report.certificate = _certificate(G.cofactors_of(idx), G.generators)
            break
    else:
        if bound is not None and max_level >= bound:
            report.verdict = NO_CONSEQUENCE
    report.steps = total_steps
    report.seconds = time.monotonic() - t0
    return report


def sigma_power_membership(f: DSPolynomial, F: Union[PolySystem, Iterable[DSPolynomial]], m_max: int,
                           level: int = 0, *, shifted: bool = True, schedule: str = "fixed",
                           max_steps: Optional[int] = DEFAULT_STEPS,
                           max_seconds: Optional[float] = DEFAULT_SECONDS) -> EliminationReport:
    """Find the least ``m`` with ``S^m(f^m)`` in the ideal of ``prolong(F, L, L + m)``.

    ``shifted=False`` tests plain powers ``f^m`` instead.  ``schedule``:
    ``"fixed"`` tries only ``L = level``; ``"m-first"`` raises ``m`` before
    the level; ``"level-first"`` the opposite.
    """
    sys_ = _system(F)
    if schedule == "fixed":
        pairs = [(level, m) for m in range(1, m_max + 1)]
    elif schedule == "m-first":
        pairs = [(L, m) for L in range(level + 1) for m in range(1, m_max + 1)]
    elif schedule == "level-first":
        pairs = [(L, m) for m in range(1, m_max + 1) for L in range(level + 1)]
    else:
        raise ValueError(f"unknown schedule {schedule!r}")
    t0 = time.monotonic()
    mode = "sigma_power_membership" if shifted else "power_membership"
    report = EliminationReport(mode, NOT_FOUND_UP_TO)
    total = 0
    for L, m in pairs:
        budget = _budget(max_steps, max_seconds)
        gens = prolong(sys_.equations, L, L + m)
        target = f ** m
        if shifted:
            target = sigma_shift(target, m)
        report.levels.append((L, L + m))
        if not gens:
            continue
        variables = set(target.variables())
        for g in gens:
            variables |= g.variables()
        order = MonomialOrder(default_ranking(variables))
        G = buchberger(gens, order, track=True, budget=budget, ground=sys_.field)
        cof = G.represent(target, budget)
        total += budget.steps
        if cof is not None:
            report.verdict = MEMBER
            report.m = m
            report.consequence = target
            report.certificate = _certificate(cof, G.generators)
            break
    report.steps = total
    report.seconds = time.monotonic() - t0
    return report


def visible_generators(F: Iterable[DSPolynomial], w: SequencePoint) -> List[DSPolynomial]:
    """Shifts ``S^b f`` whose every variable lies inside the window of ``w``.

    Derivatives need not be listed: evaluation commutes with ``D``, so
    ``D^a S^b f`` vanishes at ``w`` whenever ``S^b f`` does.
    """
    out = []
    W = w.width
    for f in F:
        h = measure(f).ord_sigma or 0
        for b in range(W - h):
            out.append(sigma_shift(f, b))
    return out


def witness_refute(f: DSPolynomial, F: Union[PolySystem, Iterable[DSPolynomial]], w: SequencePoint) -> bool:
    """True when every visible prolonged generator vanishes at ``w`` but ``f`` does not.

    This refutes ``f^m`` lying in the ideal of the (unshifted) prolongations
    for any ``m``, since such a membership would force ``f`` to vanish at
    every N-indexed solution.
    """
    sys_ = _system(F)
    hf = measure(f).ord_sigma or 0
    if hf >= w.width:
        raise WindowTooSmall(f"f needs width {hf + 1}, window has {w.width}")
    gens = visible_generators(sys_.equations, w)
    if not gens and sys_.equations:
        raise WindowTooSmall("no generator of the system fits inside the window")
    if any(evaluate(g, w) != 0 for g in gens):
        return False
    return evaluate(f, w) != 0
