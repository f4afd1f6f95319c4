"""Certified delta engine.

Builds the truncated image V_D = φ(P) mod 𝔪̃^{D+1} as a reduced echelon
basis, reads off δ_{≤D} = r(D+1) − dim V_D and the per-branch conductor
windows, and deepens D until the tail certificate fires:

    every branch j has a window aⱼ (eⱼt^m ∈ V_D for aⱼ ≤ m ≤ D)
    and D ≥ 2aⱼ − 1.

Then 𝔪̃^{D+1} ⊆ φ(P), so δ_{≤D} = δ and aⱼ = cⱼ exactly.  The argument
is written out in docs/tail-certificate.md.

Two strategies span V_D:
    closure    start from 1, multiply every new basis row by every
               generator φ(xᵢ) until nothing new appears (default)
    monomials  images of all x^α with |α| ≤ D
"""

from __future__ import annotations

import logging
from collections import deque
from math import gcd
from typing import Any, Iterator, Sequence

from app.core.coeffield import FieldDescriptor
from app.core.echelon import EchelonBasis, SparseVector
from app.core.errors import InvalidParameterization, MissingCertificate, MultiBranch
from app.core.parameterization import restrict_to_branch, validate
from app.core.series import BranchVector
from app.models.config import EngineConfig
from app.models.param import Parameterization
from app.models.results import (
    BoundedReport,
    DeltaCertificate,
    DeltaOutcome,
    DeterminacyBounds,
    GluingReport,
    SemigroupData,
    Undecided,
)

logger = logging.getLogger(__name__)

# Per branch: sorted (exponent, raw coefficient) terms of one generator
GeneratorTerms = list[list[tuple[int, Any]]]


# ---------------------------------------------------------------------------
# Sparse helpers
# ---------------------------------------------------------------------------

def _generator_terms(phi: Parameterization, precision: int) -> list[GeneratorTerms]:
    """Truncated images φ(xᵢ) of the active variables."""
    return [
        [[(e, c) for e, c in phi.entries[j][i].terms if e <= precision] for j in range(phi.r)]
        for i in phi.active_variables()
    ]


def _times(
    field: FieldDescriptor, v: SparseVector, gen: GeneratorTerms, r: int, precision: int,
) -> SparseVector:
    """Componentwise product of a sparse vector with a generator, truncated at D."""
    out: SparseVector = {}
    for idx, a in v.items():
        m, j = divmod(idx, r)
        for e, c in gen[j]:
            if m + e > precision:
                break
            k = (m + e) * r + j
            prod = field.mul(a, c)
            out[k] = field.add(out[k], prod) if k in out else prod
    return {k: x for k, x in out.items() if not field.is_zero(x)}


def _constant_vector(field: FieldDescriptor, r: int) -> SparseVector:
    return {j: field.one() for j in range(r)}


def _monomial_vectors(
    phi: Parameterization, precision: int, keep_zero: bool,
) -> Iterator[SparseVector]:
    """Images of x^α, |α| ≤ D, by degree; zero images optional."""
    field, r = phi.field, phi.r
    gens = _generator_terms(phi, precision)
    # (vector, index of the last variable used) so each α appears once
    layer: list[tuple[SparseVector, int]] = [(_constant_vector(field, r), 0)]
    yield layer[0][0]
    for _ in range(precision):
        nxt: list[tuple[SparseVector, int]] = []
        for vec, last in layer:
            for i in range(last, len(gens)):
                prod = _times(field, vec, gens[i], r, precision) if vec else {}
                if prod or keep_zero:
                    nxt.append((prod, i))
                    yield prod
        if not nxt:
            break
        layer = nxt


def _gcd_of(values: Sequence[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g


# ---------------------------------------------------------------------------
# Engine
# ---------------------------------------------------------------------------

class DeltaEngine:
    """Certified δ, conductor, semigroup and determinacy bounds.

    Args:
        config: Deepening schedule and spanning strategy.
    """

    def __init__(self, config: EngineConfig | None = None) -> None:
        self.config = config or EngineConfig()
        self.config.validate()

    # -- input checks ------------------------------------------------------

    @staticmethod
    def _require_valid(phi: Parameterization, precision: int | None = None) -> None:
        report = validate(phi)
        if not report.valid:
            raise InvalidParameterization("; ".join(report.reasons()))
        if precision is not None and precision < 1:
            raise InvalidParameterization(f"Precision must be >= 1, got {precision!r}")

    # -- truncated image ---------------------------------------------------

    def monomial_images(self, phi: Parameterization, precision: int) -> list[BranchVector]:
        """Truncations at D of φ(x^α) for all |α| ≤ D, α = 0 first.

        Variables that vanish on every branch are not enumerated.
        """
        self._require_valid(phi, precision)
        return [
            BranchVector.from_sparse(phi.field, phi.r, precision, v)
            for v in _monomial_vectors(phi, precision, keep_zero=True)
        ]

    def build_basis(self, phi: Parameterization, precision: int) -> EchelonBasis:
        """Echelon basis of V_D using the configured strategy."""
        self._require_valid(phi, precision)
        field, r = phi.field, phi.r
        basis = EchelonBasis(field, r, precision)
        if self.config.strategy == "monomials":
            for v in _monomial_vectors(phi, precision, keep_zero=False):
                basis.insert(v)
            return basis

        gens = _generator_terms(phi, precision)
        queue: deque[SparseVector] = deque()
        first = basis.insert(_constant_vector(field, r))
        if first is not None:
            queue.append(dict(first))
        while queue:
            w = queue.popleft()
            for gen in gens:
                new = basis.insert(_times(field, w, gen, r, precision))
                if new is not None:
                    queue.append(dict(new))
        return basis

    # -- bounded report ----------------------------------------------------

    def _report(self, basis: EchelonBasis) -> BoundedReport:
        r, d = basis.r, basis.precision
        members = []
        windows: list[int | None] = []
        for j in range(1, r + 1):
            in_span = [m for m in range(d + 1) if basis.contains_unit(basis.flat_index(m, j))]
            members.append(tuple(in_span))
            window = None
            m = d
            while m >= 0 and basis.contains_unit(basis.flat_index(m, j)):
                window = m
                m -= 1
            windows.append(window)
        attained: list[list[int]] = [[] for _ in range(r)]
        for m, j in basis.pivots():
            attained[j - 1].append(m)
        return BoundedReport(
            precision=d,
            rank=basis.rank,
            delta_bounded=basis.size - basis.rank,
            windows=tuple(windows),
            members=tuple(members),
            attained=tuple(tuple(a) for a in attained),
        )

    def delta_bounded(self, phi: Parameterization, precision: int) -> BoundedReport:
        """δ_{≤D}, conductor windows and attained orders at precision D."""
        return self._report(self.build_basis(phi, precision))

    # -- certificate -------------------------------------------------------

    def delta_certified(self, phi: Parameterization) -> DeltaOutcome:
        """Iteratively deepen D until the tail certificate fires.

        Returns:
            DeltaCertificate, or Undecided with gcd evidence at d_max.

        Raises:
            InvalidParameterization: If φ fails validation.
        """
        self._require_valid(phi)
        basis: EchelonBasis | None = None
        report: BoundedReport | None = None
        for d in self.config.precisions():
            basis = self.build_basis(phi, d)
            report = self._report(basis)
            logger.debug(
                "D=%d: delta_bounded=%d, windows=%s", d, report.delta_bounded, report.windows,
            )
            if report.certifies():
                cert = self._certificate(phi, report)
                logger.info(
                    "Certified at D=%d: delta=%d, conductor=%s", d, cert.delta, cert.cond_exp,
                )
                return cert

        evidence = self._gcd_evidence(basis, report)
        logger.warning(
            "No certificate up to D=%d (delta >= %d, gcd evidence %s)",
            report.precision, report.delta_bounded, evidence,
        )
        return Undecided(
            d_max=report.precision,
            delta_bounded=report.delta_bounded,
            gcd_evidence=evidence,
            windows=report.windows,
            field_label=phi.field.label,
        )

    def _certificate(self, phi: Parameterization, report: BoundedReport) -> DeltaCertificate:
        cond_exp = tuple(int(a) for a in report.windows)
        delta = report.delta_bounded
        cond_total = sum(cond_exp)
        semigroup = None
        if phi.r == 1:
            semigroup = _semigroup_from(report.attained[0], cond_exp[0])
        return DeltaCertificate(
            delta=delta,
            cond_exp=cond_exp,
            cond_total=cond_total,
            d_used=report.precision,
            gorenstein=cond_total == 2 * delta,
            det_bound_max=max(1, 2 * max(cond_exp) - 1),
            det_bound_delta=max(1, 4 * delta - 1),
            semigroup=semigroup,
            attained=report.attained,
            field_label=phi.field.label,
        )

    def _gcd_evidence(self, basis: EchelonBasis, report: BoundedReport) -> tuple[int, ...]:
        """Per branch, gcd of the nonzero orders of the projected image."""
        if basis.r == 1:
            return (_gcd_of(report.attained[0]),)
        out = []
        for j in range(basis.r):
            proj = EchelonBasis(basis.field, 1, basis.precision)
            for row in basis.sparse_rows():
                v = {idx // basis.r: x for idx, x in row.items() if idx % basis.r == j}
                if v:
                    proj.insert(v)
            out.append(_gcd_of([m for m, _ in proj.pivots()]))
        return tuple(out)

    # -- derived data ------------------------------------------------------

    def semigroup(self, outcome: DeltaOutcome) -> SemigroupData:
        """Gaps, minimal generators and Frobenius number (r = 1 only).

        Raises:
            MissingCertificate: If *outcome* is Undecided.
            MultiBranch: If the certificate has more than one branch.
        """
        cert = _require_certificate(outcome)
        if cert.r > 1:
            raise MultiBranch(f"Semigroup needs a single branch, certificate has r={cert.r}")
        return cert.semigroup

    def gorenstein(self, outcome: DeltaOutcome) -> bool:
        cert = _require_certificate(outcome)
        return cert.cond_total == 2 * cert.delta

    def determinacy_bound(self, outcome: DeltaOutcome) -> DeterminacyBounds:
        cert = _require_certificate(outcome)
        return DeterminacyBounds(cert.det_bound_max, cert.det_bound_delta)

    def gluing_codim(
        self,
        phi: Parameterization,
        cert: DeltaOutcome,
        branch_certs: Sequence[DeltaOutcome],
    ) -> int:
        """δ(φ) − Σⱼ δ(φⱼ).

        Raises:
            MultiBranch: If φ has a single branch.
            MissingCertificate: If any certificate is absent or Undecided,
                or the branch count does not match.
        """
        if phi.r < 2:
            raise MultiBranch("Gluing codimension needs at least two branches")
        total = _require_certificate(cert)
        if len(branch_certs) != phi.r:
            raise MissingCertificate(
                f"Need {phi.r} branch certificates, got {len(branch_certs)}"
            )
        parts = [_require_certificate(c) for c in branch_certs]
        return total.delta - sum(c.delta for c in parts)

    def gluing_report(self, phi: Parameterization) -> GluingReport:
        """Certify φ and every restriction φⱼ, then compute the gluing codimension."""
        total = self.delta_certified(phi)
        branches = [self.delta_certified(restrict_to_branch(phi, j)) for j in range(1, phi.r + 1)]
        codim = self.gluing_codim(phi, total, branches)
        return GluingReport(total=total, branches=tuple(branches), codim=codim)


def _require_certificate(outcome: DeltaOutcome | None) -> DeltaCertificate:
    if not isinstance(outcome, DeltaCertificate):
        raise MissingCertificate(f"A delta certificate is required, got {type(outcome).__name__}")
    return outcome


def _semigroup_from(attained: Sequence[int], conductor: int) -> SemigroupData:
    """Semigroup data from Γ ∩ [0, c) and the conductor c."""
    below = {m for m in attained if m < conductor}
    gaps = tuple(m for m in range(conductor) if m not in below)
    top = max(2 * conductor, 1)
    gamma = below | set(range(conductor, top + 1))
    positive = sorted(g for g in gamma if g > 0)
    generators = tuple(
        g for g in positive
        if not any(g - a in gamma and g - a > 0 for a in positive if a < g)
    )
    return SemigroupData(
        gaps=gaps,
        generators=generators,
        frobenius=conductor - 1,
        conductor=conductor,
    )
