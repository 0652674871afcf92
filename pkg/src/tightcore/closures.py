"""Frobenius and tight closure of m-primary ideals.

Soundness discipline: a *yes* membership verdict is always backed by a
re-checkable certificate (direct containment, or a Frobenius witness q
with x^q in I^[q], which persists to all larger q); a *no* verdict is
only ever issued through the test-ideal colon bound (x outside I : tau
forces x outside I^*, because tau multiplies every tight closure back
into its ideal).  Anything else is *undetermined*, together with the
range of q actually tested.  Closure reports carry a lower and an upper
bound and claim exactness only when the two meet.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dfield

import numpy as np

from .errors import DomainError, NotRegisteredError, PreconditionError, ResourceError
from .groebner import quotient_vspace_basis
from .ideals import Ideal, maximal_ideal, origin_component_cached
from .poly import Poly


@dataclass(frozen=True)
class MembershipVerdict:
    """Three-valued closure-membership answer with its evidence."""

    status: str                 # yes | no | undetermined
    element: str
    ideal_gens: tuple[str, ...]
    route: str = ""             # containment | frobenius-witness | exact-closure | colon
    witness_q: int | None = None
    q_tested: tuple[int, ...] = ()
    colon_gens: tuple[str, ...] = ()
    note: str = ""

    def to_dict(self):
        d = {"status": self.status, "element": self.element, "route": self.route}
        if self.witness_q is not None:
            d["witness_q"] = self.witness_q
        if self.q_tested:
            d["q_tested"] = list(self.q_tested)
        if self.note:
            d["note"] = self.note
        return d


@dataclass(frozen=True)
class ClosureReport:
    """Two-sided answer for a closure computation."""

    kind: str                   # frobenius | tight
    input_ideal: Ideal
    lower: Ideal
    upper: Ideal
    exact: bool
    q_tested: tuple[int, ...] = ()
    test_ideal: Ideal | None = None
    certificates: tuple[MembershipVerdict, ...] = ()
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.lower.contains(self.input_ideal):
            raise AssertionError("closure lower bound lost the input ideal")
        if not self.upper.contains(self.lower):
            raise AssertionError("closure bounds are crossed")

    def to_dict(self):
        return {
            "kind": self.kind,
            "input": [str(g) for g in self.input_ideal.canonical_gens()],
            "lower": [str(g) for g in self.lower.canonical_gens()],
            "upper": [str(g) for g in self.upper.canonical_gens()],
            "exact": self.exact,
            "q_tested": list(self.q_tested),
            "test_ideal": None if self.test_ideal is None else
                          [str(g) for g in self.test_ideal.canonical_gens()],
            "certificates": [c.to_dict() for c in self.certificates],
            "notes": list(self.notes),
        }


def default_q_max(ring) -> int:
    return ring.field.p ** 6


def _q_ladder(ring, q_max: int, max_gen_degree: int, degree_cap: int):
    """Powers of p up to q_max whose bracket generators stay under the
    degree cap; the point where the ladder is cut short is reported."""
    p = ring.field.p
    ring.field.check_q(q_max)
    qs = []
    q = p
    cut = False
    while q <= q_max:
        if max_gen_degree > 0 and q * max_gen_degree > degree_cap:
            cut = True
            break
        qs.append(q)
        q *= p
    return qs, cut


def _member_at_q(x: Poly, I: Ideal, q: int) -> bool:
    # brackets are tested through their origin component so that
    # membership matches the local ring even when the affine variety of
    # I picks up extra points away from the origin
    return origin_component_cached(I.bracket_power(q)).gb.contains(x ** q)


def frobenius_member(x, I: Ideal, q_max: int | None = None) -> MembershipVerdict:
    """Is x in the Frobenius closure of I?  Yes-answers carry a witness
    q (membership persists upward since x^(qp) = (x^q)^p); there is no
    sound finite *no*, so the alternative is undetermined."""
    ring = I.ring
    x = ring.poly(x)
    if q_max is None:
        q_max = default_q_max(ring)
    ideal_strs = tuple(str(g) for g in I.gens)
    if origin_component_cached(I).gb.contains(x):
        return MembershipVerdict("yes", str(x), ideal_strs,
                                 route="containment", witness_q=1, q_tested=(1,))
    maxdeg = max((g.total_degree for g in I.gens), default=0)
    qs, cut = _q_ladder(ring, q_max, maxdeg, I.degree_cap)
    tested = [1]
    note = "q ladder cut by degree cap" if cut else ""
    for q in qs:
        try:
            ok = _member_at_q(x, I, q)
        except ResourceError:
            note = "q ladder aborted by degree cap"
            break
        tested.append(q)
        if ok:
            return MembershipVerdict("yes", str(x), ideal_strs,
                                     route="frobenius-witness", witness_q=q,
                                     q_tested=tuple(tested))
    return MembershipVerdict("undetermined", str(x), ideal_strs,
                             q_tested=tuple(tested), note=note)


def frobenius_closure(I: Ideal, q_max: int | None = None) -> ClosureReport:
    """Frobenius closure of an m-primary ideal by certified fixpoint.

    Candidates are the standard monomials of the current lower bound;
    certified members are adjoined and the candidate set recomputed
    until a fixpoint, then the Frobenius level q is raised.  The result
    is declared stable (and the report exact) when two consecutive q
    levels certify nothing new.
    """
    ring = I.ring
    if not I.is_m_primary():
        raise DomainError("frobenius closure implemented for m-primary ideals")
    if q_max is None:
        q_max = default_q_max(ring)
    maxdeg = max((g.total_degree for g in I.gens), default=0)
    qs, cut = _q_ladder(ring, q_max, maxdeg, I.degree_cap)
    lower = origin_component_cached(I)
    certs: list[MembershipVerdict] = []
    notes: list[str] = [] if lower is I else ["localized at the origin"]
    tested: list[int] = []
    stall = 0
    stable = False
    for q in qs:
        added_any = False
        while True:
            added_round = False
            mons, complete = quotient_vspace_basis(lower.gb, I.degree_cap)
            if not complete:
                raise DomainError("candidate enumeration did not close")
            for ev in mons:
                if sum(ev) == 0:
                    continue
                mono = Poly(ring, np.array([ev], dtype=np.int64),
                            np.ones(1, dtype=np.int64))
                try:
                    ok = _member_at_q(mono, I, q)
                except ResourceError:
                    notes.append(f"level q={q} aborted by degree cap")
                    ok = False
                if ok:
                    certs.append(MembershipVerdict(
                        "yes", str(mono), tuple(str(g) for g in I.gens),
                        route="frobenius-witness", witness_q=q))
                    lower = lower + Ideal(ring, (mono,), I.degree_cap)
                    added_round = added_any = True
            if not added_round:
                break
        tested.append(q)
        stall = 0 if added_any else stall + 1
        if stall >= 2:
            stable = True
            break
    if cut and not stable:
        notes.append("q ladder cut by degree cap before stability")
    if not stable:
        notes.append("stability window not reached; lower bound heuristic")
    return ClosureReport("frobenius", I, lower, lower, stable,
                         q_tested=tuple(tested), certificates=tuple(certs),
                         notes=tuple(notes))


# ----------------------------------------------------------------------
# test ideals
# ----------------------------------------------------------------------

def test_ideal_lookup(ring) -> Ideal:
    """Known test ideals: an explicitly attached one, the diagonal
    hypersurface family u*x^p + v*y^p + w*z^p (test ideal m^(p-1)), or
    x^2 - y^3 - z^7 in characteristic > 7 (test ideal m)."""
    if ring.test_ideal_gens is not None:
        return Ideal(ring, ring.test_ideal_gens)
    p = ring.field.p
    m = maximal_ideal(ring)
    if len(ring.relations) == 1 and ring.nvars == 3:
        rel = ring.relations[0]
        exps = {tuple(int(x) for x in ev) for ev in rel.exps}
        diag = {tuple(p if i == j else 0 for i in range(3)) for j in range(3)}
        if exps == diag and len(rel) == 3:
            return m ** (p - 1)
        if p > 7 and _is_brieskorn_2_3_7(ring, rel):
            return m
    raise NotRegisteredError(
        f"no registered test ideal for {ring!r}; attach one explicitly")


def _is_brieskorn_2_3_7(ring, rel: Poly) -> bool:
    """Match c*(x^2 - y^3 - z^7) with the degrees assigned to the three
    variables in any order."""
    if len(rel) != 3:
        return False
    terms = {}
    for ev, c in zip(rel.exps, rel.coeffs):
        nz = np.flatnonzero(ev)
        if len(nz) != 1:
            return False
        terms[int(ev[nz[0]])] = int(c)
    if set(terms) != {2, 3, 7}:
        return False
    field = ring.field
    c2 = terms[2]
    return terms[3] == field.neg(c2) and terms[7] == field.neg(c2)


def _require_test_ideal(ring, test_ideal):
    if test_ideal is not None:
        return test_ideal
    try:
        return test_ideal_lookup(ring)
    except NotRegisteredError as ex:
        raise PreconditionError(str(ex)) from ex


# ----------------------------------------------------------------------
# tight closure
# ----------------------------------------------------------------------

def sop_colon_applies(I: Ideal, test_ideal: Ideal | None = None) -> bool:
    """Can the parameter-ideal colon formula compute I^* exactly?"""
    ring = I.ring
    if not ring.hypersurface_isolated_singularity:
        return False
    if test_ideal is None and ring.test_ideal_gens is None:
        try:
            test_ideal_lookup(ring)
        except NotRegisteredError:
            return False
    return I.is_sop_ideal()


def tight_closure_sop(I: Ideal, test_ideal: Ideal | None = None) -> ClosureReport:
    """Exact tight closure of a system-of-parameters ideal as I : tau.

    Valid on a (hypersurface, hence Gorenstein) isolated singularity
    with known test ideal; both hypotheses are enforced."""
    ring = I.ring
    if not ring.hypersurface_isolated_singularity:
        raise PreconditionError(
            "ring is not flagged as a hypersurface isolated singularity")
    tau = _require_test_ideal(ring, test_ideal)
    if not I.is_sop_ideal():
        raise PreconditionError("ideal is not generated by a system of parameters")
    Iloc = origin_component_cached(I)
    C = Iloc.colon(tau)
    notes = ("exact: parameter-ideal colon formula",)
    if Iloc is not I:
        notes += ("localized at the origin",)
    return ClosureReport("tight", I, C, C, True, test_ideal=tau, notes=notes)


def tight_closure_bracket(I: Ideal, q_max: int | None = None,
                          test_ideal: Ideal | None = None) -> ClosureReport:
    """Two-sided tight closure: Frobenius-certified lower bound and the
    test-ideal colon upper bound I : tau; exact when they meet."""
    ring = I.ring
    if not I.is_m_primary():
        raise DomainError("tight closure bracket implemented for m-primary ideals")
    tau = _require_test_ideal(ring, test_ideal)
    fc = frobenius_closure(I, q_max)
    upper = origin_component_cached(I).colon(tau)
    exact = fc.lower == upper
    notes = fc.notes if exact else fc.notes + ("bounds did not meet",)
    return ClosureReport("tight", I, fc.lower, upper, exact,
                         q_tested=fc.q_tested, test_ideal=tau,
                         certificates=fc.certificates, notes=notes)


def tight_closure(I: Ideal, q_max: int | None = None,
                  test_ideal: Ideal | None = None) -> ClosureReport:
    """Dispatcher: the exact sop colon when its hypotheses hold, else
    the two-sided bracket."""
    if sop_colon_applies(I, test_ideal):
        return tight_closure_sop(I, test_ideal)
    return tight_closure_bracket(I, q_max, test_ideal)


def tight_member(x, I: Ideal, q_max: int | None = None,
                 test_ideal: Ideal | None = None) -> MembershipVerdict:
    """Three-valued membership in I^*."""
    ring = I.ring
    x = ring.poly(x)
    Iloc = origin_component_cached(I)
    if Iloc.gb.contains(x):
        return MembershipVerdict("yes", str(x), tuple(str(g) for g in I.gens),
                                 route="containment", witness_q=1)
    if sop_colon_applies(I, test_ideal):
        rep = tight_closure_sop(I, test_ideal)
        status = "yes" if rep.upper.gb.contains(x) else "no"
        return MembershipVerdict(status, str(x), tuple(str(g) for g in I.gens),
                                 route="exact-closure",
                                 colon_gens=tuple(str(g) for g in rep.upper.canonical_gens()))
    fv = frobenius_member(x, I, q_max)
    if fv.status == "yes":
        return fv
    tau = _require_test_ideal(ring, test_ideal)
    if Iloc.is_m_primary():
        upper = Iloc.colon(tau)
        if not upper.gb.contains(x):
            return MembershipVerdict("no", str(x), tuple(str(g) for g in I.gens),
                                     route="colon", q_tested=fv.q_tested,
                                     colon_gens=tuple(str(g) for g in upper.canonical_gens()))
    else:
        # clip to an m-primary over-ideal: (I + m^N)^* contains I^*, so
        # falling outside its colon bound is still a certified no
        m = maximal_ideal(ring)
        for N in (4, 6, 8):
            clipped = I + m ** N
            upper = clipped.colon(tau)
            if not upper.gb.contains(x):
                return MembershipVerdict(
                    "no", str(x), tuple(str(g) for g in I.gens),
                    route="colon", q_tested=fv.q_tested,
                    colon_gens=tuple(str(g) for g in upper.canonical_gens()),
                    note=f"via the m-primary clip I + m^{N}")
    return MembershipVerdict("undetermined", str(x), tuple(str(g) for g in I.gens),
                             q_tested=fv.q_tested,
                             note="inside the colon bound but no Frobenius witness")


def star_independent(gens, ring=None, q_max: int | None = None,
                     test_ideal: Ideal | None = None):
    """Are the elements *-independent (none inside the tight closure of
    the others)?  Returns (status, per-element verdicts): yes only when
    every deletion test is a certified no."""
    gens = list(gens)
    if ring is None:
        if not gens:
            raise DomainError("no elements given")
        ring = gens[0].ring
    gens = [ring.poly(g) for g in gens]
    verdicts = []
    all_no = True
    any_yes = False
    for i, g in enumerate(gens):
        others = Ideal(ring, gens[:i] + gens[i + 1:])
        v = tight_member(g, others, q_max=q_max, test_ideal=test_ideal)
        verdicts.append(v)
        if v.status != "no":
            all_no = False
        if v.status == "yes":
            any_yes = True
    status = "yes" if all_no else ("no" if any_yes else "undetermined")
    return status, tuple(verdicts)
