"""Cross-validation suite — certified engine vs independent references.

Randomized instances (fixed seed) are checked against:
- brute_delta: rank of the full monomial image at fixed precision
- sieve_semigroup: numerical semigroup of monomial curves
- Structural identities: δ ≤ c ≤ 2δ, plane curves are Gorenstein,
  δ_{≤D} monotone in D, invariance under reparameterization and
  linear source changes, gluing codimension ≥ r − 1
- Exact conductor windows, additive closure of attained orders,
  determinacy of the truncation at 2·max cⱼ − 1, validity monotone in N

Run:
    pytest tests/test_validation.py -v -s          # with summary report
    pytest tests/test_validation.py -m validation  # via marker
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from app.core.coeffield import FieldDescriptor
from app.core.delta_engine import DeltaEngine
from app.core.errors import SingularMatrix
from app.core.oracle import brute_delta, sieve_semigroup
from app.core.parameterization import (
    from_coefficients,
    linear_source_change,
    monomial_curve,
    reparameterize_target,
    truncate,
    validate,
)
from app.core.series import UniPolynomial
from app.models.config import EngineConfig
from app.models.param import Parameterization
from app.models.results import DeltaCertificate

pytestmark = pytest.mark.validation

QQ_F = FieldDescriptor.rationals()
SEED = 20260611
MIN_INSTANCES = 20
MAX_CONDUCTOR = 40
_NONZERO = [-3, -2, -1, 1, 2, 3]

# ---------------------------------------------------------------------------
# Module-level report collector
# ---------------------------------------------------------------------------

_REPORT: list[dict] = []


def _record(test_id: str, ours: int, ref: int) -> None:
    _REPORT.append({"id": test_id, "ours": ours, "ref": ref, "passed": ours == ref})


# ---------------------------------------------------------------------------
# Instance generation
# ---------------------------------------------------------------------------

def _random_entry(rng: np.random.Generator) -> dict[int, int]:
    k = int(rng.integers(0, 3))
    exps = rng.choice(np.arange(1, 9), size=k, replace=False)
    return {int(e): int(rng.choice(_NONZERO)) for e in exps}


def _random_parameterization(rng: np.random.Generator) -> Parameterization:
    n = int(rng.integers(1, 4))
    r = int(rng.integers(1, 3))
    branches = [[_random_entry(rng) for _ in range(n)] for _ in range(r)]
    return from_coefficients(QQ_F, branches)


@pytest.fixture(scope="module")
def engine() -> DeltaEngine:
    return DeltaEngine(EngineConfig(d_init=16, d_max=256))


@pytest.fixture(scope="module")
def instances(engine) -> list[tuple[Parameterization, DeltaCertificate]]:
    """Valid random instances that certify with a moderate conductor."""
    rng = np.random.default_rng(SEED)
    found: list[tuple[Parameterization, DeltaCertificate]] = []
    for _ in range(400):
        if len(found) >= MIN_INSTANCES + 4:
            break
        phi = _random_parameterization(rng)
        if not validate(phi).valid:
            continue
        cert = engine.delta_certified(phi)
        if isinstance(cert, DeltaCertificate) and cert.cond_total <= MAX_CONDUCTOR:
            found.append((phi, cert))
    return found


@pytest.fixture(scope="module")
def monomial_instances() -> list[list[int]]:
    rng = np.random.default_rng(SEED + 1)
    out: list[list[int]] = []
    while len(out) < MIN_INSTANCES:
        size = int(rng.integers(2, 4))
        exps = sorted(int(e) for e in rng.choice(np.arange(2, 10), size=size, replace=False))
        if np.gcd.reduce(exps) == 1:
            out.append(exps)
    return out


def _random_substitution(rng: np.random.Generator) -> UniPolynomial:
    a, b = (int(v) for v in rng.integers(-3, 4, size=2))
    return UniPolynomial.from_terms(QQ_F, [(1, Fraction(1)), (2, Fraction(a)), (3, Fraction(b))])


def _random_source_change(rng: np.random.Generator, phi: Parameterization) -> Parameterization:
    while True:
        matrix = rng.integers(-3, 4, size=(phi.n, phi.n)).tolist()
        try:
            return linear_source_change(phi, matrix)
        except SingularMatrix:
            continue


# ---------------------------------------------------------------------------
# Oracle equivalence
# ---------------------------------------------------------------------------

class TestOracleEquivalence:

    def test_enough_instances(self, instances):
        assert len(instances) >= MIN_INSTANCES

    def test_brute_force_delta(self, instances):
        """Engine δ equals brute-force δ_{≤D} at D = 2c + 5."""
        for k, (phi, cert) in enumerate(instances):
            ref = brute_delta(phi, 2 * cert.cond_total + 5)
            _record(f"random[{k}] n={phi.n} r={phi.r}", cert.delta, ref)
            assert cert.delta == ref

    def test_sieve_gaps(self, engine, monomial_instances):
        """Monomial curves: engine gaps and conductor match the sieve."""
        for exps in monomial_instances:
            cert = engine.delta_certified(monomial_curve(QQ_F, exps))
            sieve = sieve_semigroup(exps, 200)
            _record(f"monomial{tuple(exps)} c", cert.cond_total, sieve.conductor)
            assert list(cert.semigroup.gaps) == sieve.gaps
            assert cert.cond_total == sieve.conductor


# ---------------------------------------------------------------------------
# Invariant suite
# ---------------------------------------------------------------------------

class TestInvariants:

    def test_conductor_bounds(self, instances):
        for _, cert in instances:
            assert cert.delta <= cert.cond_total <= 2 * cert.delta

    def test_gorenstein_flag(self, instances):
        for _, cert in instances:
            assert cert.gorenstein == (cert.cond_total == 2 * cert.delta)

    def test_plane_curves_gorenstein(self, instances):
        plane = [cert for phi, cert in instances if phi.n == 2]
        for cert in plane:
            assert cert.gorenstein

    def test_conductor_windows_exact(self, engine, instances):
        """Windows at twice the certifying precision equal the conductor exponents."""
        for phi, cert in instances:
            assert engine.delta_bounded(phi, 2 * cert.d_used).windows == cert.cond_exp

    def test_attained_orders_closed_under_addition(self, engine, instances):
        for phi, cert in instances:
            if phi.r != 1:
                continue
            d = 2 * cert.cond_total + 5
            attained = set(engine.delta_bounded(phi, d).attained[0])
            for a in attained:
                for b in attained:
                    if a + b <= d:
                        assert a + b in attained

    def test_truncation_at_determinacy_bound(self, engine, instances):
        for phi, cert in instances:
            cut = engine.delta_certified(truncate(phi, cert.det_bound_max))
            assert isinstance(cut, DeltaCertificate)
            assert cut.delta == cert.delta
            assert cut.cond_exp == cert.cond_exp
            if phi.r == 1:
                assert cut.semigroup.gaps == cert.semigroup.gaps

    def test_validity_monotone_under_truncation(self):
        rng = np.random.default_rng(SEED + 4)
        for _ in range(100):
            phi = _random_parameterization(rng)
            flags = [validate(truncate(phi, order)).valid for order in range(1, 10)]
            assert flags == sorted(flags)
            assert flags[-1] == validate(phi).valid

    def test_bounded_delta_monotone(self, engine, instances):
        for phi, cert in instances:
            values = [
                engine.delta_bounded(phi, d).delta_bounded
                for d in (2, 4, 8, 16, 2 * cert.cond_total + 5)
            ]
            assert values == sorted(values)
            assert values[-1] == cert.delta

    def test_target_reparameterization(self, engine, instances):
        rng = np.random.default_rng(SEED + 2)
        for phi, cert in instances:
            j = int(rng.integers(1, phi.r + 1))
            d_work = max(phi.max_degree, cert.det_bound_max)
            moved = engine.delta_certified(
                reparameterize_target(phi, j, _random_substitution(rng), d_work)
            )
            assert moved.delta == cert.delta
            assert moved.cond_exp == cert.cond_exp
            if phi.r == 1:
                assert moved.semigroup.gaps == cert.semigroup.gaps

    def test_linear_source_change(self, engine, instances):
        rng = np.random.default_rng(SEED + 3)
        for phi, cert in instances:
            moved = engine.delta_certified(_random_source_change(rng, phi))
            assert moved.delta == cert.delta
            assert moved.cond_exp == cert.cond_exp
            if phi.r == 1:
                assert moved.semigroup.gaps == cert.semigroup.gaps

    def test_gluing_codimension(self, engine, instances):
        for phi, _ in instances:
            if phi.r < 2:
                continue
            assert engine.gluing_report(phi).codim >= phi.r - 1

    def test_node_gluing(self, engine):
        node = from_coefficients(QQ_F, [[{1: 1}, {}], [{}, {1: 1}]])
        assert engine.gluing_report(node).codim == 1


# ===================================================================
# Summary report, printed as final test
# ===================================================================

class TestZZZReport:
    """Print cross-validation summary report (runs last due to naming)."""

    def test_zzz_summary_report(self):
        if not _REPORT:
            pytest.skip("No validation results collected")

        passed = sum(1 for r in _REPORT if r["passed"])
        lines = [
            "",
            "=" * 64,
            "ORACLE CROSS-VALIDATION",
            "=" * 64,
            f"{'Instance':<40} {'Engine':>7} {'Ref':>7} {'Status':>6}",
            "-" * 64,
        ]
        for r in _REPORT:
            status = "PASS" if r["passed"] else "FAIL"
            lines.append(f"{r['id']:<40} {r['ours']:>7} {r['ref']:>7} {status:>6}")
        lines.extend([
            "-" * 64,
            f"Total: {len(_REPORT)} | Passed: {passed} | Failed: {len(_REPORT) - passed}",
            "=" * 64,
        ])
        print("\n".join(lines))
