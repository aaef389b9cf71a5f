from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import HypothesisViolatedError
from ..hypotheses import HypothesisReport, check_hypothesis
from ..matrix import Matrix
from ..oracle import DrazinData, drazin
from ..scalar import DEFAULT_POLICY, EXACT, TolerancePolicy

FORMULA = "formula"
ORACLE = "oracle"


class Trace:
    """Collects provenance and identity residuals for one route run.

    Child traces share storage with their parent and only prefix the names,
    so nested routes report into one flat record.
    """

    def __init__(self, policy: TolerancePolicy = DEFAULT_POLICY, prefix: str = ""):
        self.policy = policy
        self.prefix = prefix
        self.provenance: list[tuple[str, str]] = []
        self.identities: dict[str, tuple[float, bool]] = {}
        self.reports: dict[str, HypothesisReport] = {}

    def child(self, name: str) -> "Trace":
        t = Trace(self.policy, f"{self.prefix}{name}/")
        t.provenance, t.identities, t.reports = self.provenance, self.identities, self.reports
        return t

    def formula(self, what: str):
        self.provenance.append((self.prefix + what, FORMULA))

    def oracle(self, what: str):
        self.provenance.append((self.prefix + what, ORACLE))

    def check(self, name: str, expr: Matrix):
        """Record that ``expr`` should vanish."""
        self.identities[self.prefix + name] = (expr.max_abs(), expr.is_zero(self.policy))

    def check_equal(self, name: str, lhs: Matrix, rhs: Matrix):
        self.check(name, lhs - rhs)

    def oracle_drazin(self, what: str, x: Matrix) -> DrazinData:
        self.oracle(what)
        return drazin(x, self.policy)


@dataclass
class RouteResult:
    route: str
    inverse: Matrix
    report: HypothesisReport
    forced: bool = False
    provenance: list[tuple[str, str]] = field(default_factory=list)
    identities: dict[str, tuple[float, bool]] = field(default_factory=dict)

    @property
    def identities_hold(self) -> bool:
        return all(ok for _, ok in self.identities.values())

    @property
    def failed_identities(self) -> list[str]:
        return [k for k, (_, ok) in self.identities.items() if not ok]

    def oracle_steps(self) -> list[str]:
        return [k for k, src in self.provenance if src == ORACLE]

    def formula_steps(self) -> list[str]:
        return [k for k, src in self.provenance if src == FORMULA]

    def to_json(self) -> dict:
        return {
            "route": self.route,
            "forced": self.forced,
            "hypothesis": self.report.to_json(),
            "inverse": self.inverse.to_json(),
            "provenance": [{"step": k, "source": s} for k, s in self.provenance],
            "identities": [{"name": k, "residual": r, "holds": ok}
                           for k, (r, ok) in self.identities.items()],
        }


def gate(hid: str, mats, force: bool, trace: Trace) -> HypothesisReport:
    """Check ``hid``; raise unless satisfied or ``force`` is set."""
    report = check_hypothesis(hid, *mats, policy=trace.policy)
    trace.reports[trace.prefix + hid] = report
    if not report.satisfied and not force:
        raise HypothesisViolatedError(report)
    return report


def is_exact(m: Matrix) -> bool:
    return m.mode == EXACT


def derived(inverse: Matrix, projector: Matrix) -> DrazinData:
    """Drazin data produced by a formula; the index is not tracked."""
    return DrazinData(inverse, None, projector)
