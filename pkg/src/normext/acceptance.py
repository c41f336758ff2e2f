"""The eleven acceptance checks, shared by the test suite and ``normext selftest``.

Each check returns a CriterionResult; nothing here decides pass/fail by
anything other than recomputation.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import intmat
from .catalog import build_entry, names
from .cohomology import (centralizer_class, centralizer_compat_check, character_cocycle, determinant_character,
                         double_coset_formula_check, fixing_subgroup)
from .extensions import normalizer_extension, presentation_check, split_check, tits_cocycle_raw, tits_vs_reflection
from .lattice import StrictMarking, generate_group, is_trivial_mod2, markings_of
from .rootdata import (MarkedReflectionLattice, all_marking_families, lattice_to_rootsystem, lattice_to_torus,
                       rootsystem_to_lattice, torus_to_lattice, validate_root_system)
from .twoadic import FixtureError, block_fixture, classify, di4_data, di4_invariants
from .words import all_minimal_words, find_simple_system, reflection_sequence, word_image


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0
    known_deviation: str = ""

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        extra = f" (known deviation: {self.known_deviation})" if self.known_deviation and not self.passed else ""
        return f"criterion {self.number}: {verdict}{extra} - {self.title} [{self.seconds:.1f}s] {self.detail}".rstrip()


WORD_GROUPS = ["A2_sc", "B2_sc", "G2_sc", "A3_sc"]
TITS_GROUPS = ["SU(2)", "A2_sc", "B2_sc", "G2_sc", "A3_sc", "B3_sc"]


def _timed(number: int, title: str, body: Callable[[], tuple[bool, str]], deviation: str = "") -> CriterionResult:
    t0 = time.perf_counter()
    try:
        ok, detail = body()
    except FixtureError as exc:
        ok, detail = False, str(exc)
    except (ValueError, ArithmeticError) as exc:
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return CriterionResult(number, title, ok, detail, time.perf_counter() - t0, deviation)


# 1


def marking_count_law() -> tuple[bool, str]:
    checked = bad = 0
    for name in names():
        g = build_entry(name).lattice.group
        for s in g.reflections():
            m = g.elements[s]
            checked += 1
            if (len(markings_of(m)) == 2) != is_trivial_mod2(m):
                bad += 1
    return bad == 0, f"{checked} reflections, {bad} violations"


# 2


def _random_unimodular(n: int, rng: random.Random) -> tuple[tuple[int, ...], ...]:
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(3 * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            m[0] = [-x for x in m[0]]
            continue
        f = rng.choice([-2, -1, 1, 2])
        m[i] = [a + f * b for a, b in zip(m[i], m[j])]
    return tuple(map(tuple, m))


def conjugated_lattice(lat: MarkedReflectionLattice, q, family: dict | None = None) -> MarkedReflectionLattice:
    """The same marked lattice written in the basis given by the unimodular matrix q."""
    qi = intmat.integer_inverse(q)
    g = lat.group
    gens = [intmat.matmul(intmat.matmul(q, g.elements[x]), qi) for x in g.generators]
    group = generate_group(gens, dim=g.dim)
    fam = family if family is not None else lat.markings
    marks = {}
    for i, mk in fam.items():
        new = StrictMarking(intmat.matvec(q, mk.b), intmat.vecmat(mk.beta, qi))
        marks[group.find(new.matrix())] = new
    return MarkedReflectionLattice(group, marks)


def random_instances(count: int, seed: int = 0, max_rank: int = 3) -> list[MarkedReflectionLattice]:
    rng = random.Random(seed)
    pool = [n for n in names() if 1 <= build_entry(n).rank <= max_rank]
    out = []
    for _ in range(count):
        lat = build_entry(rng.choice(pool)).lattice
        fam = rng.choice(all_marking_families(lat.group))
        out.append(conjugated_lattice(lat, _random_unimodular(lat.rank, rng), fam))
    return out


def round_trip(lat: MarkedReflectionLattice) -> bool:
    rs = lattice_to_rootsystem(lat)
    if not validate_root_system(rs).passed:
        return False
    back = rootsystem_to_lattice(rs)
    return back == lat and lattice_to_rootsystem(back) == rs and torus_to_lattice(lattice_to_torus(lat)) == lat


def round_trips(random_count: int = 200) -> tuple[bool, str]:
    cat_bad = [n for n in names() if not round_trip(build_entry(n).lattice)]
    rnd = random_instances(random_count)
    rnd_bad = sum(1 for lat in rnd if not round_trip(lat))
    ok = not cat_bad and rnd_bad == 0
    return ok, f"{len(names())} catalog entries ({len(cat_bad)} bad), {random_count} random ({rnd_bad} bad)"


# 3, 4


def tits_kernel() -> tuple[bool, str]:
    odd = 0
    values = 0
    for name in TITS_GROUPS:
        ss = find_simple_system(build_entry(name).lattice.group)
        for vec in tits_cocycle_raw(ss).values():
            values += 1
            odd += any(v % 2 for v in vec)
    return odd == 0, f"{values} values over {len(TITS_GROUPS)} groups, {odd} outside 2Z[Sigma*]"


def tits_equals_reflection() -> tuple[bool, str]:
    got = []
    for name in TITS_GROUPS:
        g = build_entry(name).lattice.group
        res = tits_vs_reflection(g, find_simple_system(g))
        got.append(bool(res))
    return all(got), f"witnesses found for {sum(got)}/{len(got)} groups"


# 5


def presentations() -> tuple[bool, str]:
    failed = []
    for name in names():
        e = build_entry(name)
        rep = presentation_check(e.torus, find_simple_system(e.lattice.group))
        if not rep.passed:
            failed.append(name)
    return not failed, f"{len(names())} entries, failures: {failed or 'none'}"


# 6

EXPECTED_VERDICTS = {"SU(2)": "nonsplit", "SO(3)": "split", "U(2)": "nonsplit"}


def rank_one_verdicts() -> tuple[bool, str]:
    got = {}
    for name in EXPECTED_VERDICTS:
        nu = normalizer_extension(build_entry(name).torus)
        got[name] = "split" if split_check(nu) else "nonsplit"
    ok = got == EXPECTED_VERDICTS
    return ok, ", ".join(f"{k} {v}" for k, v in got.items())


# 7


def word_lemmas() -> tuple[bool, str]:
    words = 0
    problems = []
    for name in WORD_GROUPS:
        g = build_entry(name).lattice.group
        ss = find_simple_system(g)
        refl = set(g.reflections())
        lengths = ss.lengths()
        for x in range(len(g)):
            for w in all_minimal_words(ss, x):
                words += 1
                seq = reflection_sequence(ss, w)
                if len(set(seq)) != len(seq):
                    problems.append((name, w, "multiplicity"))
                if x in refl:
                    for s in ss.simples:
                        if s != x and g.mul(s, x) == g.mul(x, s) and s in seq:
                            problems.append((name, w, "vanishing"))
                    n = (lengths[x] - 1) // 2
                    pal = w[:n + 1] + tuple(reversed(w[:n]))
                    if word_image(ss, pal) != x:
                        problems.append((name, w, "palindrome"))
    return not problems, f"{words} minimal words, {len(problems)} violations"


# 8


def double_coset_instances() -> list[tuple[str, str, list[int], list[int], object]]:
    """(label, group, K, H, H-cocycle) instances of the double-coset formula."""
    out = []

    def cents(name):
        g = build_entry(name).lattice.group
        return g, [cls[0] for cls in g.conjugacy_classes(g.reflections())]

    for name in ("A2_sc", "B2_sc", "G2_sc", "A3_sc", "B3_sc"):
        g, reps = cents(name)
        t = reps[0]
        u = reps[-1]
        other = next((s for s in g.reflections() if s != t and g.mul(s, t) != g.mul(t, s)), t)
        H, k = centralizer_class(g, t)
        out.append((f"{name}: K = W, H = C(t)", g, list(range(len(g))), H.members, k))
        K = g.centralizer(u if u != t else other)
        out.append((f"{name}: K = C(u), H = C(t)", g, K, H.members, k))
        if name in ("A2_sc", "B3_sc"):
            kd = character_cocycle(H.group, determinant_character(H.group), 2, "det")
            out.append((f"{name}: K = C(u), H = C(t), det class", g, K, H.members, kd))
    a3 = build_entry("A3_sc")
    WA = fixing_subgroup(a3.torus, [(Fraction(1, 2), 0, 0)])
    g = a3.lattice.group
    long_t = g.reflections()[0]
    H, k = centralizer_class(g, long_t)
    out.append(("A3_sc: K = W_A, A = <(1/2,0,0)>, H = C(t)", g, WA, H.members, k))
    return out


def double_coset_formula(min_instances: int = 10) -> tuple[bool, str]:
    inst = double_coset_instances()
    bad = [label for label, g, K, H, k in inst if not double_coset_formula_check(g, K, H, k).cohomologous]
    ok = not bad and len(inst) >= min_instances
    return ok, f"{len(inst)} instances, failures: {bad or 'none'}"


# 9

COMPAT_INSTANCES = [
    ("B3_sc", [(Fraction(1, 2), 0, 0)]),
    ("A2_sc", [(Fraction(1, 2), 0)]),
    ("B2_sc", [(Fraction(1, 4), 0)]),
    ("G2_sc", [(Fraction(1, 2), 0)]),
    ("A3_sc", [(Fraction(1, 2), 0, 0)]),
    ("C3_sc", [(0, 0, Fraction(1, 2))]),
    ("B2_ad", []),
]


def centralizer_compatibility(min_applicable: int = 5) -> tuple[bool, str]:
    applicable = 0
    bad = []
    for name, A in COMPAT_INSTANCES:
        rep = centralizer_compat_check(build_entry(name).torus, A)
        if rep.applicable:
            applicable += 1
            if not rep.cohomologous:
                bad.append(name)
    return not bad and applicable >= min_applicable, f"{applicable} applicable instances, failures: {bad or 'none'}"


# 10, 11

EXPECTED_TAGS = ["Coxeter(A1)", "Coxeter(B2)", "DI4"]


def two_adic_classification(precisions=(8, 12)) -> tuple[bool, str]:
    seen = {}
    for k in precisions:
        seen[k] = sorted(classify(block_fixture(k)))
    ok = all(v == EXPECTED_TAGS for v in seen.values())
    return ok, "; ".join(f"k={k}: {v}" for k, v in seen.items())


def di4_integrity() -> tuple[bool, str]:
    inv = di4_invariants(di4_data(16, verify=False))
    bad = [k for k, v in inv.items() if not v]
    return not bad, f"failed invariants: {bad}" if bad else f"{len(inv)} invariants hold"


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    body: Callable[[], tuple[bool, str]]
    deviation: str = ""

    def check(self) -> CriterionResult:
        return _timed(self.number, self.title, self.body, self.deviation)


def criteria(level: str = "full") -> list[Criterion]:
    """The checks in order; "quick" trims the random sample and the precisions tried."""
    quick = level == "quick"
    return [
        Criterion(1, "marking-count law", marking_count_law),
        Criterion(2, "round-trip bijections", lambda: round_trips(50 if quick else 200)),
        Criterion(3, "Tits kernel in 2Z[Sigma*]", tits_kernel),
        Criterion(4, "reflection extension ~ Tits extension", tits_equals_reflection),
        Criterion(5, "presentation relations", presentations),
        Criterion(6, "SU(2)/SO(3)/U(2) verdicts", rank_one_verdicts,
                  deviation="the U(2) normalizer extension is split"),
        Criterion(7, "word lemmas", word_lemmas),
        Criterion(8, "double-coset formula", double_coset_formula),
        Criterion(9, "centralizer compatibility", centralizer_compatibility),
        Criterion(10, "2-adic classification", lambda: two_adic_classification((8,) if quick else (8, 12))),
        Criterion(11, "DI4 fixture integrity", di4_integrity),
    ]


def run(level: str = "full") -> list[CriterionResult]:
    return [c.check() for c in criteria(level)]
