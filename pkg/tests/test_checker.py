import random

from freeprod import checker
from freeprod.checker import CONDITION1, CONDITION2, KuroshData, Part
from freeprod.errors import (
    BadFactorIndexError,
    NotASubgroupError,
    TrivialSubgroupError,
)
from freeprod.finite_group import (
    direct_product,
    make_cyclic,
    make_dihedral_reflections,
)
from freeprod.free_product import FreeProduct


def example1_data(s3z2):
    d3 = s3z2.factors[0]
    a, b = d3.generators[0][1], d3.generators[1][1]
    return KuroshData(
        s3z2,
        0,
        (
            Part.of(s3z2, 0, [a]),
            Part.of(s3z2, 0, [b], s3z2.generator("c")),
        ),
    )


def example2_data(z6z2):
    z6 = z6z2.factors[0]
    a, b = z6.generators[0][1], z6.generators[1][1]
    return KuroshData(
        z6z2,
        0,
        (
            Part.of(z6z2, 0, [a]),
            Part.of(z6z2, 0, [b], z6z2.generator("c")),
        ),
    )


def klein_data(kleinz2):
    k = kleinz2.factors[0]
    a, d = k.generators[0][1], k.generators[1][1]
    return KuroshData(
        kleinz2,
        0,
        (
            Part.of(kleinz2, 0, [a]),
            Part.of(kleinz2, 0, [d], kleinz2.generator("c")),
        ),
    )


# -- validate ---------------------------------------------------------------


def test_validate_example1_ok(s3z2):
    assert checker.validate(example1_data(s3z2)) == []


def test_validate_trivial_subgroup(s3z2):
    data = KuroshData(s3z2, 0, (Part(0, (0,), s3z2.identity()),))
    errors = checker.validate(data)
    assert any(isinstance(e, TrivialSubgroupError) for e in errors)


def test_validate_non_closed_set(s3z2):
    d3 = s3z2.factors[0]
    a, b = d3.generators[0][1], d3.generators[1][1]
    data = KuroshData(s3z2, 0, (Part(0, (0, a, b), s3z2.identity()),))
    errors = checker.validate(data)
    assert any(isinstance(e, NotASubgroupError) for e in errors)


def test_validate_bad_factor_index(s3z2):
    data = KuroshData(s3z2, 0, (Part(5, (0, 1), s3z2.identity()),))
    errors = checker.validate(data)
    assert any(isinstance(e, BadFactorIndexError) for e in errors)


# -- condition 1 ------------------------------------------------------------


def test_condition1(s3z2):
    data = example1_data(s3z2)
    assert checker.check_condition1(data) is None
    for rank in (1, 3):
        v = checker.check_condition1(KuroshData(s3z2, rank, data.parts))
        assert v is not None and v.kind == CONDITION1 and v.free_rank == rank


# -- condition 2 ------------------------------------------------------------


def test_condition2_example1_witness(s3z2):
    d3 = s3z2.factors[0]
    a, b = d3.generators[0][1], d3.generators[1][1]
    violations = checker.check_condition2(example1_data(s3z2))
    assert violations
    first = violations[0]
    assert first.part_indices == (0, 1)
    assert first.witness_f == a
    assert first.witness_g == d3.mul(b, a)  # g = b a
    assert first.k1 == first.k2 == 1
    # the conjugated subgroup really is <a>
    assert d3.conjugate_subgroup(d3.generated_subgroup([b]), first.witness_g) == (0, a)


def test_condition2_example2_witness(z6z2):
    z6 = z6z2.factors[0]
    a, b = z6.generators[0][1], z6.generators[1][1]
    violations = checker.check_condition2(example2_data(z6z2))
    assert violations
    first = violations[0]
    assert first.witness_f == z6.mul(a, b)
    assert first.witness_g == 0
    assert (first.k1, first.k2) == (3, 2)


def test_condition2_klein_passes(kleinz2):
    assert checker.check_condition2(klein_data(kleinz2)) == []


def reverify_condition2(data, violation):
    """Independent re-check of a witness using only finite_group primitives."""
    group = data.ambient.factors[violation.factor]
    j1, j2 = violation.part_indices
    f1 = group.power(violation.witness_f, violation.k1)
    f2 = group.power(violation.witness_f, violation.k2)
    conj = group.conjugate_subgroup(data.parts[j2].subgroup, violation.witness_g)
    return (
        f1 != 0
        and f2 != 0
        and f1 in data.parts[j1].subgroup
        and f2 in conj
    )


def test_condition2_witnesses_reverify(s3z2, z6z2):
    for data in (example1_data(s3z2), example2_data(z6z2)):
        for v in checker.check_condition2(data):
            assert reverify_condition2(data, v)


# -- condition 3 ------------------------------------------------------------


def test_condition3_example1(s3z2):
    d3 = s3z2.factors[0]
    a, b = d3.generators[0][1], d3.generators[1][1]
    violations = checker.check_condition3(example1_data(s3z2))
    assert violations
    first = violations[0]
    assert first.witness_g == d3.mul(b, a)
    assert first.witness_f == a
    assert (first.k1, first.k2) == (1, 1)


def test_condition3_klein_passes(kleinz2):
    assert checker.check_condition3(klein_data(kleinz2)) == []


def test_condition3_single_part_vacuous(s3z2):
    d3 = s3z2.factors[0]
    data = KuroshData(s3z2, 0, (Part.of(s3z2, 0, [d3.generators[0][1]]),))
    assert checker.check_condition3(data) == []
    assert checker.check_condition2(data) == []


def test_condition3_implies_condition2(s3z2, z6z2, kleinz2):
    for data in (example1_data(s3z2), example2_data(z6z2), klein_data(kleinz2)):
        c3_pairs = {v.part_indices for v in checker.check_condition3(data)}
        c2_pairs = {v.part_indices for v in checker.check_condition2(data)}
        assert c3_pairs <= c2_pairs


# -- check_all ----------------------------------------------------------------


def test_check_all_example1_fails(s3z2):
    verdict = checker.check_all(example1_data(s3z2))
    assert not verdict.passes_necessary
    assert not verdict.inconclusive
    assert any(v.kind == CONDITION2 for v in verdict.violations)


def test_check_all_free_factor_passes(s3z2):
    # single part that is a whole free factor (a retract): clean
    data = KuroshData(s3z2, 0, (Part.of(s3z2, 0, [s3z2.factors[0].generators[0][1],
                                                  s3z2.factors[0].generators[1][1]]),))
    verdict = checker.check_all(data)
    assert verdict.passes_necessary and verdict.inconclusive


def test_check_all_klein_inconclusive(kleinz2):
    verdict = checker.check_all(klein_data(kleinz2))
    assert verdict.passes_necessary
    assert verdict.inconclusive  # necessary, never sufficient


def test_check_all_reports_condition1_and_2(s3z2):
    data = KuroshData(s3z2, 2, example1_data(s3z2).parts)
    verdict = checker.check_all(data)
    kinds = {v.kind for v in verdict.violations}
    assert kinds == {CONDITION1, CONDITION2}


# -- randomized laws -----------------------------------------------------------


def random_ambient(rng):
    makers = [
        lambda: make_cyclic(rng.choice([2, 3, 4, 5]), _fresh(rng)),
        lambda: make_dihedral_reflections(rng.choice([2, 3]), (_fresh(rng), _fresh(rng))),
        lambda: direct_product(
            make_cyclic(2, _fresh(rng)), make_cyclic(rng.choice([2, 3]), _fresh(rng))
        ),
    ]
    n = rng.randint(2, 3)
    return FreeProduct([rng.choice(makers)() for _ in range(n)])


_COUNTER = [0]


def _fresh(rng):
    _COUNTER[0] += 1
    return f"g{_COUNTER[0]}"


def random_subgroup(rng, group):
    while True:
        size = rng.randint(1, min(2, group.order - 1))
        gens = rng.sample(range(1, group.order), size)
        sub = group.generated_subgroup(gens)
        if len(sub) >= 2:
            return sub


def random_conjugator(rng, ambient):
    n = len(ambient.factors)
    sylls = []
    f = rng.randrange(n)
    for _ in range(rng.randint(0, 3)):
        sylls.append((f, rng.randrange(1, ambient.factors[f].order)))
        f = rng.choice([i for i in range(n) if i != f])
    return ambient.element(sylls)


def test_duplicated_part_always_violates():
    rng = random.Random(99)
    for _ in range(60):
        ambient = random_ambient(rng)
        i = rng.randrange(len(ambient.factors))
        sub = random_subgroup(rng, ambient.factors[i])
        parts = (
            Part(i, sub, random_conjugator(rng, ambient)),
            Part(i, sub, random_conjugator(rng, ambient)),
        )
        data = KuroshData(ambient, 0, parts)
        assert checker.check_condition2(data), "duplicated part must violate"


def test_distinct_factor_parts_always_pass():
    rng = random.Random(100)
    for _ in range(60):
        ambient = random_ambient(rng)
        parts = tuple(
            Part(i, random_subgroup(rng, g), random_conjugator(rng, ambient))
            for i, g in enumerate(ambient.factors)
        )
        data = KuroshData(ambient, 0, parts)
        assert checker.check_condition2(data) == []


def brute_pair_witness(group, sub1, sub2):
    """Oracle with power exponents up to the group order."""
    set1 = set(sub1)
    for f in range(1, group.order):
        for g in range(group.order):
            conj = set(group.conjugate_subgroup(tuple(sub2), g))
            for k1 in range(1, group.order + 1):
                p1 = group.power(f, k1)
                if p1 == 0 or p1 not in set1:
                    continue
                for k2 in range(1, group.order + 1):
                    p2 = group.power(f, k2)
                    if p2 != 0 and p2 in conj:
                        return f, g, k1, k2
    return None


def test_condition2_search_matches_brute_oracle():
    rng = random.Random(101)
    for _ in range(40):
        ambient = random_ambient(rng)
        i = rng.randrange(len(ambient.factors))
        group = ambient.factors[i]
        sub1 = random_subgroup(rng, group)
        sub2 = random_subgroup(rng, group)
        data = KuroshData(
            ambient,
            0,
            (
                Part(i, sub1, ambient.identity()),
                Part(i, sub2, random_conjugator(rng, ambient)),
            ),
        )
        fast = checker.check_condition2(data)
        slow01 = brute_pair_witness(group, sub1, sub2)
        slow10 = brute_pair_witness(group, sub2, sub1)
        fast_pairs = {v.part_indices for v in fast}
        assert ((0, 1) in fast_pairs) == (slow01 is not None)
        assert ((1, 0) in fast_pairs) == (slow10 is not None)
