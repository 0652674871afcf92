"""Reductions, cl-reductions, spreads, and cores.

The core (and its tight and Frobenius relatives) is an intersection
over infinitely many (cl-)reductions; here it is bracketed from above
by intersecting certified randomly sampled minimal (cl-)reductions
until the intersection stalls, and from below by whatever sound bound
the theory offers (the test ideal times a certified lower bound of the
tight closure for the *-core; the ideal itself for parameter ideals;
a reduction-number colon formula for the integral core when the
characteristic exceeds the reduction number).  Exactness is claimed
only when two sides meet; a stalled upper bound alone stays labeled
"stable".

All certificates go through the origin component of the sampled ideal,
so the answers are those of the local ring at the origin even when a
sample's affine variety acquires points elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._rng import Rng
from .closures import (MembershipVerdict, default_q_max, frobenius_member,
                       sop_colon_applies, tight_closure, tight_closure_sop,
                       star_independent, _require_test_ideal)
from .errors import DomainError, PreconditionError, ResourceError
from .groebner import buchberger, eliminate, krull_dimension
from .ideals import Ideal, maximal_ideal, origin_component_cached
from .poly import elim_block


# ----------------------------------------------------------------------
# reductions
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class ReductionCertificate:
    """Evidence that J is a (cl-)reduction of I, or why it is not."""

    kind: str                          # integral | tight | frobenius
    certified: bool
    J_gens: tuple[str, ...]
    I_gens: tuple[str, ...]
    reduction_number: int | None = None
    verdicts: tuple[MembershipVerdict, ...] = ()
    note: str = ""

    def to_dict(self):
        d = {"kind": self.kind, "certified": self.certified,
             "J": list(self.J_gens), "I": list(self.I_gens)}
        if self.reduction_number is not None:
            d["reduction_number"] = self.reduction_number
        if self.verdicts:
            d["verdicts"] = [v.to_dict() for v in self.verdicts]
        if self.note:
            d["note"] = self.note
        return d


def reduction_number(J: Ideal, I: Ideal, n_max: int = 6) -> int | None:
    """Least n <= n_max with J*I^n = I^(n+1) (None when not reached).
    Computed on origin components, so the answer is the local one."""
    if not I.contains(J):
        raise DomainError("J is not contained in I")
    Jl = origin_component_cached(J)
    Il = origin_component_cached(I)
    for n in range(n_max + 1):
        if (Jl * Il ** n) == Il ** (n + 1):
            return n
    return None


def is_cl_reduction(J: Ideal, I: Ideal, kind: str, q_max: int | None = None,
                    n_max: int = 6, test_ideal: Ideal | None = None) -> ReductionCertificate:
    """Certify J <= I <= J^cl for cl in {integral, tight, frobenius}.

    Integral reductions certify through the reduction number; closure
    reductions certify each minimal generator of I inside J^cl (an
    exact sop closure when available, else per-element Frobenius
    witnesses).  Failure to certify is not a disproof."""
    if kind not in ("integral", "tight", "frobenius"):
        raise DomainError(f"unknown reduction kind {kind!r}")
    if not I.contains(J):
        raise DomainError("J is not contained in I")
    Jg = tuple(str(g) for g in J.gens)
    Ig = tuple(str(g) for g in I.gens)
    if kind == "integral":
        r = reduction_number(J, I, n_max)
        return ReductionCertificate(kind, r is not None, Jg, Ig, reduction_number=r,
                                    note="" if r is not None else
                                    f"no reduction number within {n_max}")
    targets = I.minimal_generators()[0] if I.in_max_ideal() else I.gens
    verdicts = []
    ok = True
    if kind == "tight" and sop_colon_applies(J, test_ideal):
        rep = tight_closure_sop(J, test_ideal)
        for g in targets:
            inside = rep.upper.gb.contains(g)
            verdicts.append(MembershipVerdict(
                "yes" if inside else "no", str(g), Jg, route="exact-closure"))
            ok = ok and inside
        return ReductionCertificate(kind, ok, Jg, Ig, verdicts=tuple(verdicts))
    if q_max is None:
        q_max = I.ring.field.p ** 2  # certificates live at small q; callers raise it
    for g in targets:
        v = frobenius_member(g, J, q_max)
        verdicts.append(v)
        ok = ok and v.status == "yes"
    return ReductionCertificate(kind, ok, Jg, Ig, verdicts=tuple(verdicts))


def general_elements(I: Ideal, count: int, seed: int = 0) -> tuple:
    """count random field-coefficient combinations of the minimal
    generators of I (deterministic in seed)."""
    if count < 1:
        raise DomainError("need count >= 1")
    gens = I.minimal_generators()[0]
    rng = Rng(seed).child(0xE1E)
    ring = I.ring
    out = []
    for _ in range(count):
        acc = ring.zero
        for g in gens:
            lam = rng.below(ring.field.order)
            if lam:
                acc = acc + g.scale(lam)
        out.append(acc)
    return tuple(out)


# ----------------------------------------------------------------------
# spreads
# ----------------------------------------------------------------------

def analytic_spread(I: Ideal) -> int:
    """Krull dimension of the special fiber ring of I.

    m-primary ideals are equimultiple, so the spread is dim R; for the
    rest the fiber cone is presented by eliminating the Rees variable."""
    ring = I.ring
    if I.is_zero:
        raise DomainError("analytic spread of the zero ideal")
    if not I.in_max_ideal():
        raise DomainError("analytic spread needs an ideal inside m")
    if I.is_m_primary():
        return ring.dim
    gens, mu = I.minimal_generators()
    if mu == 1:
        return 1
    t_name = ring.fresh_names("t@", 1)
    T_names = ring.fresh_names("T@", mu)
    ext = ring.extend(t_name + T_names)
    t = ext.var(0)
    rees_gens = [ext.var(1 + i) - t * ring.lift(g, ext) for i, g in enumerate(gens)]
    G = buchberger(rees_gens + list(ext.relations), ring=ext,
                   order=elim_block((0,)), include_relations=False,
                   degree_cap=I.degree_cap)
    contracted = [g for g in eliminate(G, range(1, ext.nvars)).polys]
    fiber_gens = contracted + [ext.var(0)] + [ext.var(1 + mu + i)
                                              for i in range(ring.nvars)]
    GF_ = buchberger(fiber_gens, ring=ext, include_relations=False,
                     degree_cap=I.degree_cap)
    return krull_dimension(GF_)


@dataclass(frozen=True)
class SpreadReport:
    """Analytic spread, star spread (possibly a range), deviations."""

    ell: int
    ell_star_lo: int
    ell_star_hi: int
    exact: bool
    mu: int
    height: int
    trials: int
    seed: int
    witness: tuple[str, ...] = ()      # generators of the certified minimal *-reduction
    notes: tuple[str, ...] = ()

    @property
    def ell_star(self) -> int | None:
        return self.ell_star_hi if self.exact else None

    @property
    def cl_deviation(self) -> int | None:
        return None if not self.exact else self.ell_star_hi - self.height

    @property
    def cl_deviation2(self) -> int | None:
        return None if not self.exact else self.mu - self.ell_star_hi

    def to_dict(self):
        return {"ell": self.ell,
                "ell_star": self.ell_star,
                "ell_star_range": [self.ell_star_lo, self.ell_star_hi],
                "exact": self.exact, "mu": self.mu, "height": self.height,
                "cld": self.cl_deviation, "cld2": self.cl_deviation2,
                "trials": self.trials, "seed": self.seed,
                "witness": list(self.witness), "notes": list(self.notes)}


def star_spread(I: Ideal, trials: int = 8, seed: int = 0,
                q_max: int | None = None, test_ideal: Ideal | None = None) -> SpreadReport:
    """Star spread by sampling: the smallest s for which s general
    elements give a certified *-reduction with certified *-independent
    generators is reported exactly; a certified reduction whose
    independence stays open yields a range."""
    ell = analytic_spread(I)
    mu = I.mu
    ht = I.height()
    rng = Rng(seed)
    range_hit = None
    for s in range(ell, mu + 1):
        for trial in range(trials):
            sub = rng.child(s * 1000 + trial).seed
            J = Ideal(I.ring, general_elements(I, s, sub), I.degree_cap)
            if J.mu < s:
                continue
            cert = is_cl_reduction(J, I, "tight", q_max=q_max, test_ideal=test_ideal)
            if not cert.certified:
                continue
            indep, _vs = star_independent(J.minimal_generators()[0], I.ring,
                                          q_max=q_max, test_ideal=test_ideal)
            if indep == "yes":
                return SpreadReport(ell, s, s, True, mu, ht, trials, seed,
                                    witness=tuple(str(g) for g in J.gens))
            if range_hit is None:
                range_hit = (s, tuple(str(g) for g in J.gens))
        if range_hit is not None:
            s_hit, wit = range_hit
            return SpreadReport(ell, ell, s_hit, False, mu, ht, trials, seed,
                                witness=wit,
                                notes=("reduction certified but independence undetermined",))
    return SpreadReport(ell, ell, mu, False, mu, ht, trials, seed,
                        notes=("no certified *-reduction found within budget",))


# ----------------------------------------------------------------------
# cores
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class CoreBracket:
    """Two-sided result for core / *-core / F-core."""

    kind: str                          # core | star_core | f_core
    lower: Ideal | None
    upper: Ideal | None
    exact: bool
    stable: bool
    gens_per_sample: int
    samples_tried: int
    samples_certified: int
    seed: int
    trace: tuple[int, ...]             # dim_k R/upper after each certified sample
    notes: tuple[str, ...] = ()

    def value(self) -> Ideal:
        if not self.exact:
            raise PreconditionError(f"{self.kind} bracket is not exact")
        return self.upper

    def to_dict(self):
        return {
            "kind": self.kind,
            "lower": None if self.lower is None else
                     [str(g) for g in self.lower.canonical_gens()],
            "upper": None if self.upper is None else
                     [str(g) for g in self.upper.canonical_gens()],
            "exact": self.exact, "stable": self.stable,
            "gens_per_sample": self.gens_per_sample,
            "samples": [self.samples_certified, self.samples_tried],
            "seed": self.seed, "trace": list(self.trace),
            "notes": list(self.notes),
        }


def _certify_sample(J, I, kind, q_max, n_max, test_ideal):
    if kind == "core":
        return is_cl_reduction(J, I, "integral", n_max=n_max).certified
    if kind == "star_core":
        return is_cl_reduction(J, I, "tight", q_max=q_max,
                               test_ideal=test_ideal).certified
    return is_cl_reduction(J, I, "frobenius", q_max=q_max).certified


def core_by_intersection(I: Ideal, kind: str = "core", max_samples: int = 40,
                         stall_window: int = 8, seed: int = 0,
                         q_max: int | None = None, n_max: int = 6,
                         test_ideal: Ideal | None = None) -> CoreBracket:
    """Bracket the (cl-)core of an m-primary ideal by sampled
    intersection; see the module docstring for the bound discipline."""
    if kind not in ("core", "star_core", "f_core"):
        raise DomainError(f"unknown core kind {kind!r}")
    if not I.is_m_primary():
        raise PreconditionError("cores are computed for m-primary ideals only")
    ring = I.ring
    if I.is_sop_ideal():
        Iloc = origin_component_cached(I)
        return CoreBracket(kind, Iloc, Iloc, True, True, I.mu, 0, 0, seed, (),
                           notes=("parameter ideal: basic and *-basic, core is the ideal",))

    lower = None
    notes: list[str] = []
    if kind == "star_core":
        tau = _require_test_ideal(ring, test_ideal)
        closure = tight_closure(I, q_max=q_max, test_ideal=test_ideal)
        lower = tau * closure.lower
        notes.append("lower bound: test ideal times certified tight-closure lower bound")

    ell = analytic_spread(I)
    mu = I.mu
    rng = Rng(seed)
    upper = None
    trace: list[int] = []
    tried = certified = 0
    stall = 0
    misses_at_s = 0
    s = ell
    subset_queue = _gen_subsets(I, s)
    while tried < max_samples and stall < stall_window:
        if subset_queue:
            J = subset_queue.pop(0)
            tag = "subset"
        else:
            J = Ideal(ring, general_elements(I, s, rng.child(7000 + tried).seed),
                      I.degree_cap)
            tag = "general"
        tried += 1
        if J.mu < s or not I.contains(J):
            continue
        if not _certify_sample(J, I, kind, q_max, n_max, test_ideal):
            if tag == "general":
                misses_at_s += 1
                if certified > 0:
                    # once something certified, fruitless samples count
                    # toward the stall window as non-shrinking
                    stall += 1
                # no certified sample at this generator count: widen
                elif misses_at_s >= max(4, stall_window // 2) and s < mu:
                    s += 1
                    misses_at_s = 0
                    subset_queue = _gen_subsets(I, s)
            continue
        certified += 1
        Jl = origin_component_cached(J)
        upper = Jl if upper is None else upper.intersect(Jl)
        trace.append(upper.vspace_dim())
        if len(trace) > 1 and trace[-1] == trace[-2]:
            if tag == "general" or not subset_queue:
                stall += 1
        else:
            stall = 0
        if lower is not None and upper == lower:
            return CoreBracket(kind, lower, upper, True, True, s, tried,
                               certified, seed, tuple(trace), tuple(notes))
    stable = stall >= stall_window
    exact = lower is not None and upper is not None and upper == lower
    if not stable and not exact:
        notes.append("intersection did not stall within the sample budget")
    return CoreBracket(kind, lower, upper, exact, stable, s, tried, certified,
                       seed, tuple(trace), tuple(notes))


def _gen_subsets(I: Ideal, s: int, cap: int = 24) -> list:
    """Generator-subset candidates tried before random samples: sparse
    (cl-)reductions can cut strictly deeper than generic ones, and the
    intersection should not miss them."""
    from itertools import combinations
    from math import comb
    gens = I.minimal_generators()[0]
    if s > len(gens) or comb(len(gens), s) > cap:
        return []
    return [Ideal(I.ring, list(sub), I.degree_cap)
            for sub in combinations(gens, s)]


def core_colon_formula(I: Ideal, J: Ideal, n_max: int = 6) -> Ideal:
    """core(I) = J^(r+1) : I^r for a certified minimal reduction J with
    reduction number r < char, checked stable at the next step."""
    if not I.contains(J):
        raise DomainError("J is not contained in I")
    Il = origin_component_cached(I)
    Jl = origin_component_cached(J)
    if J.mu != analytic_spread(I):
        raise PreconditionError("J is not minimally generated by ell(I) elements")
    r = reduction_number(J, I, n_max)
    if r is None:
        raise PreconditionError(f"J not certified a reduction of I within n_max={n_max}")
    p = I.ring.field.p
    if p <= r:
        raise PreconditionError(
            f"colon formula needs characteristic > reduction number ({p} <= {r})")
    core = (Jl ** (r + 1)).colon(Il ** r)
    check = (Jl ** (r + 2)).colon(Il ** (r + 1))
    if core != check:
        raise ResourceError(
            "colon formula unstable: J^(r+1):I^r = "
            f"{core} but J^(r+2):I^(r+1) = {check}")
    return core


# ----------------------------------------------------------------------
# comparison
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class CoreComparison:
    core: CoreBracket
    star: CoreBracket
    frob: CoreBracket
    verdict: str                       # equal | strict | consistent
    checks: tuple[str, ...]
    notes: tuple[str, ...] = ()

    def to_dict(self):
        return {"core": self.core.to_dict(), "star_core": self.star.to_dict(),
                "f_core": self.frob.to_dict(), "verdict": self.verdict,
                "checks": list(self.checks), "notes": list(self.notes)}


def compare_cores(I: Ideal, seed: int = 0, max_samples: int = 40,
                  stall_window: int = 8, q_max: int | None = None,
                  n_max: int = 6, test_ideal: Ideal | None = None) -> CoreComparison:
    """Compute the three core brackets, verify every containment and
    radical identity that the bounds soundly support, and classify
    core vs *-core as equal / strict / consistent."""
    rng = Rng(seed)
    star = core_by_intersection(I, "star_core", max_samples, stall_window,
                                rng.child(1).seed, q_max, n_max, test_ideal)
    frob = core_by_intersection(I, "f_core", max_samples, stall_window,
                                rng.child(2).seed, q_max, n_max, test_ideal)
    core = core_by_intersection(I, "core", max_samples, stall_window,
                                rng.child(3).seed, q_max, n_max, test_ideal)
    notes: list[str] = []
    if not core.exact and core.upper is not None:
        # try to pin the core exactly via the reduction-number colon formula
        core = _exactify_core(I, core, rng.child(4).seed, n_max, notes)

    checks: list[str] = []

    def check(name, ok):
        checks.append(("ok: " if ok else "FAILED: ") + name)
        return ok

    if core.exact and star.exact:
        check("core inside *-core", star.upper.contains(core.upper))
    if core.exact and star.upper is not None:
        check("core inside *-core upper bound", star.upper.contains(core.upper))
    if star.exact and frob.upper is not None:
        check("*-core inside F-core upper bound", frob.upper.contains(star.upper))
    if star.lower is not None and star.upper is not None:
        check("*-core bounds nested", star.upper.contains(star.lower))
    for name, br in (("core", core), ("star_core", star), ("f_core", frob)):
        if br.exact:
            check(f"{name} is m-primary (radical preserved)", br.upper.is_m_primary())

    verdict = "consistent"
    if core.exact and star.exact:
        verdict = "equal" if core.upper == star.upper else (
            "strict" if star.upper.contains(core.upper) else "inconsistent")
    else:
        cval = core.upper if core.upper is not None else None
        sval = star.lower
        if cval is not None and sval is not None and sval.contains(cval) \
                and not cval.contains(sval):
            # core <= cval strictly inside sval <= *-core
            verdict = "strict"
    return CoreComparison(core, star, frob, verdict, tuple(checks), tuple(notes))


def _exactify_core(I, bracket, seed, n_max, notes):
    p = I.ring.field.p
    ell = analytic_spread(I)
    rng = Rng(seed)
    for k in range(12):
        J = Ideal(I.ring, general_elements(I, ell, rng.child(k).seed), I.degree_cap)
        if J.mu < ell or not I.contains(J):
            continue
        r = reduction_number(J, I, n_max)
        if r is None or p <= r:
            continue
        try:
            val = core_colon_formula(I, J, n_max)
        except (PreconditionError, ResourceError):
            continue
        if bracket.upper is not None and not bracket.upper.contains(val):
            notes.append("colon-formula core not inside sampled intersection; discarded")
            return bracket
        notes.append(f"core pinned by colon formula (r = {r})")
        return CoreBracket("core", val, val, True, bracket.stable,
                           bracket.gens_per_sample, bracket.samples_tried,
                           bracket.samples_certified, bracket.seed,
                           bracket.trace, bracket.notes + (f"colon formula, r={r}",))
    notes.append("no sampled reduction admitted the colon formula")
    return bracket
