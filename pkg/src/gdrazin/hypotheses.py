"""Residual-reporting predicates, one per condition set.

Every condition is a matrix expression that must vanish. The auxiliary
inverses and idempotents appearing in the expressions (``b^d``, ``b^pi``,
``(ab)^d``, ``(BC)^pi`` and so on) always come from :mod:`gdrazin.oracle`,
never from the formula routes being checked.

Premises of the form "x has a g-Drazin inverse" hold for every square complex
matrix and are therefore not listed as checkable conditions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

from .errors import DimensionMismatchError
from .matrix import Matrix
from .oracle import drazin
from .scalar import DEFAULT_POLICY, EXACT, TolerancePolicy

ROUTE_OF = {
    "H21": "L2.1", "H22": "T2.2", "H23": "C2.3", "H24": "C2.4", "H25": "C2.5",
    "H26": "T2.6", "H27": "C2.7", "H28": "C2.8",
    "H31": "T3.1", "H32": "C3.2", "H33": "T3.3", "H34": "C3.4", "H35": "C3.5",
    "H41": "T4.1", "H42": "C4.2", "H43": "T4.3", "H44": "C4.4", "H45": "T4.5",
    "H46": "C4.6",
}
HYPOTHESIS_OF = {route: hid for hid, route in ROUTE_OF.items()}
HYPOTHESIS_IDS = tuple(ROUTE_OF)
BLOCK_IDS = frozenset(h for h in HYPOTHESIS_IDS if h.startswith("H4"))


def arity(hid: str) -> int:
    """Number of input matrices: 2 for (a, b) ids, 4 for (A, B, C, D) ids."""
    _known(hid)
    return 4 if hid in BLOCK_IDS else 2


def _known(hid):
    if hid not in ROUTE_OF:
        raise KeyError(f"unknown hypothesis id {hid!r}")


class _PairContext:
    def __init__(self, a: Matrix, b: Matrix, policy):
        if not (a.is_square and b.is_square and a.shape == b.shape):
            raise DimensionMismatchError("a and b must be square of equal size")
        self.a, self.b, self.policy = a, b, policy

    @cached_property
    def bdata(self):
        return drazin(self.b, self.policy)

    @property
    def bd(self):
        return self.bdata.inverse

    @property
    def bpi(self):
        return self.bdata.projector

    @cached_property
    def ab(self):
        return self.a @ self.b

    @cached_property
    def abdata(self):
        return drazin(self.ab, self.policy)

    @cached_property
    def x(self):
        return self.bpi @ self.a

    @cached_property
    def xdata(self):
        return drazin(self.x, self.policy)


class _BlockContext:
    def __init__(self, A, B, C, D, policy):
        shapes = {m.shape for m in (A, B, C, D)}
        if len(shapes) != 1 or not A.is_square:
            raise DimensionMismatchError("A, B, C, D must be square of equal size")
        self.A, self.B, self.C, self.D, self.policy = A, B, C, D, policy

    @cached_property
    def BC(self):
        return self.B @ self.C

    @cached_property
    def CB(self):
        return self.C @ self.B

    @cached_property
    def bcdata(self):
        return drazin(self.BC, self.policy)

    @cached_property
    def cbdata(self):
        return drazin(self.CB, self.policy)


Cond = Callable[[object], Matrix]

# Each entry: ordered (label, expression) pairs; a condition holds when the
# expression is the zero matrix.
_H22_BASE = ("b^pi a b^d = 0", lambda c: c.bpi @ c.a @ c.bd)

CONDITIONS: dict[str, list[tuple[str, Cond]]] = {
    "H21": [("ab = 0", lambda c: c.ab)],
    "H22": [_H22_BASE],
    "H23": [_H22_BASE,
            ("a b b^pi = b^pi b a", lambda c: c.ab @ c.bpi - c.bpi @ c.b @ c.a)],
    "H24": [_H22_BASE,
            ("b^pi a b = b^pi b a", lambda c: c.bpi @ c.ab - c.bpi @ c.b @ c.a)],
    "H25": [_H22_BASE,
            ("(b^pi a)^d b^pi a b = 0", lambda c: c.xdata.inverse @ c.x @ c.b),
            ("b^pi a b (b^pi a)^pi = 0", lambda c: c.x @ c.b @ c.xdata.projector)],
    "H26": [("b^pi a b^2 = 0", lambda c: c.x @ c.b @ c.b),
            ("b^pi a b a = 0", lambda c: c.x @ c.b @ c.a)],
    "H27": [("a b^2 = 0", lambda c: c.ab @ c.b),
            ("a b a = 0", lambda c: c.ab @ c.a)],
    "H28": [("b^pi a b = 0", lambda c: c.x @ c.b)],
    "H31": [("a b^2 = 0", lambda c: c.ab @ c.b),
            ("(ab)^pi a (ab)^d = 0", lambda c: c.abdata.projector @ c.a @ c.abdata.inverse),
            ("(ab)^pi a b a = 0", lambda c: c.abdata.projector @ c.ab @ c.a)],
    "H32": [("a^2 b = 0", lambda c: c.a @ c.ab),
            ("(ab)^d b (ab)^pi = 0", lambda c: c.abdata.inverse @ c.b @ c.abdata.projector),
            ("b a b (ab)^pi = 0", lambda c: c.b @ c.ab @ c.abdata.projector)],
    "H33": [("a b^2 = 0", lambda c: c.ab @ c.b),
            ("(ab)^pi a^2 b a = 0", lambda c: c.abdata.projector @ c.a @ c.ab @ c.a)],
    "H34": [("a^2 b = 0", lambda c: c.a @ c.ab),
            ("b a b^2 (ab)^pi = 0", lambda c: c.b @ c.ab @ c.b @ c.abdata.projector)],
    "H35": [("a b^2 = 0", lambda c: c.ab @ c.b),
            ("a^2 b a = 0", lambda c: c.a @ c.ab @ c.a)],
}

_BC_PI_ABCA = ("(BC)^pi A B C A = 0", lambda c: c.bcdata.projector @ c.A @ c.BC @ c.A)
_BC_PI_ABCB = ("(BC)^pi A B C B = 0", lambda c: c.bcdata.projector @ c.A @ c.BC @ c.B)
_DCA = ("D C A = 0", lambda c: c.D @ c.C @ c.A)
_DCB = ("D C B = 0", lambda c: c.D @ c.C @ c.B)
_BDC = ("B D C = 0", lambda c: c.B @ c.D @ c.C)
_BD2 = ("B D^2 = 0", lambda c: c.B @ c.D @ c.D)
_BC_PI_A_BCD = ("(BC)^pi A (BC)^d = 0",
                lambda c: c.bcdata.projector @ c.A @ c.bcdata.inverse)
_BC_PI_BCA = ("(BC)^pi B C A = 0", lambda c: c.bcdata.projector @ c.BC @ c.A)
_BC_PI_BCB = ("(BC)^pi B C B = 0", lambda c: c.bcdata.projector @ c.BC @ c.B)
_CB_PI_CABC = ("(CB)^pi C A B C = 0", lambda c: c.cbdata.projector @ c.C @ c.A @ c.BC)
_A_BC_PI_ABC = ("A (BC)^pi A B C = 0", lambda c: c.A @ c.bcdata.projector @ c.A @ c.BC)
_ABD = ("A B D = 0", lambda c: c.A @ c.B @ c.D)
_CBD = ("C B D = 0", lambda c: c.CB @ c.D)

CONDITIONS.update({
    "H41": [_BC_PI_ABCA, _BC_PI_ABCB, _DCA, _DCB],
    "H42": [_BC_PI_ABCA, _BC_PI_ABCB, _BDC, _BD2],
    "H43": [_BC_PI_A_BCD, _BC_PI_BCA, _BC_PI_BCB, _DCA, _DCB],
    "H44": [_BC_PI_A_BCD, _BC_PI_BCA, _BC_PI_BCB, _BDC, _BD2],
    "H45": [_CB_PI_CABC, _A_BC_PI_ABC, _ABD, _CBD],
    "H46": [_CB_PI_CABC, _A_BC_PI_ABC, _BDC, _BD2],
})


def labels(hid: str) -> tuple[str, ...]:
    _known(hid)
    return tuple(lab for lab, _ in CONDITIONS[hid])


@dataclass(frozen=True)
class HypothesisReport:
    id: str
    labels: tuple[str, ...]
    residuals: tuple[float, ...]
    satisfied_flags: tuple[bool, ...]
    mode: str = EXACT
    policy: TolerancePolicy = field(default=DEFAULT_POLICY, compare=False)

    @property
    def satisfied(self) -> bool:
        return all(self.satisfied_flags)

    @property
    def verdict(self) -> str:
        return "satisfied" if self.satisfied else "violated"

    @property
    def violated(self) -> tuple[int, ...]:
        """1-based indices of the failing conditions."""
        return tuple(i + 1 for i, ok in enumerate(self.satisfied_flags) if not ok)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "verdict": self.verdict,
            "mode": self.mode,
            "conditions": [
                {"label": lab, "residual": res, "satisfied": ok}
                for lab, res, ok in zip(self.labels, self.residuals, self.satisfied_flags)
            ],
        }


def check_hypothesis(hid: str, *mats: Matrix,
                     policy: TolerancePolicy = DEFAULT_POLICY) -> HypothesisReport:
    """Evaluate every condition of ``hid`` on ``(a, b)`` or ``(A, B, C, D)``."""
    if len(mats) != arity(hid):
        raise DimensionMismatchError(f"{hid} takes {arity(hid)} matrices, got {len(mats)}")
    ctx = _BlockContext(*mats, policy) if hid in BLOCK_IDS else _PairContext(*mats, policy)
    res, flags = [], []
    for _, expr in CONDITIONS[hid]:
        value = expr(ctx)
        res.append(value.max_abs())
        flags.append(value.is_zero(policy))
    return HypothesisReport(hid, labels(hid), tuple(res), tuple(flags), mats[0].mode, policy)
