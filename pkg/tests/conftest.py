import pytest

from freeprod.finite_group import (
    direct_product,
    make_cyclic,
    make_dihedral_reflections,
)
from freeprod.free_product import FreeProduct


@pytest.fixture(scope="session")
def p23():
    """C2 * C3 with generators a, b."""
    return FreeProduct([make_cyclic(2, "a"), make_cyclic(3, "b")])


@pytest.fixture(scope="session")
def s3z2():
    """S3 * Z2: dihedral-3 on reflections a, b, plus involution c."""
    return FreeProduct([make_dihedral_reflections(3), make_cyclic(2, "c")])


@pytest.fixture(scope="session")
def z6z2():
    """Z6 * Z2 with Z6 = C2 x C3 on generators a, b."""
    z6 = direct_product(make_cyclic(2, "a"), make_cyclic(3, "b"))
    return FreeProduct([z6, make_cyclic(2, "c")])


@pytest.fixture(scope="session")
def kleinz2():
    """(C2 x C2) * C2 on generators a, d and c."""
    k = direct_product(make_cyclic(2, "a"), make_cyclic(2, "d"))
    return FreeProduct([k, make_cyclic(2, "c")])


@pytest.fixture(scope="session")
def p22():
    """C2 * C2 (infinite dihedral) with generators a, b."""
    return FreeProduct([make_cyclic(2, "a"), make_cyclic(2, "b")])


@pytest.fixture(scope="session")
def p222():
    """C2 * C2 * C2 with generators a, b, c."""
    return FreeProduct(
        [make_cyclic(2, "a"), make_cyclic(2, "b"), make_cyclic(2, "c")]
    )


def raw_syllable_lists(group, max_len=8):
    """Hypothesis strategy for raw (factor, elem) pair lists over a group."""
    import hypothesis.strategies as st

    pair = st.tuples(
        st.integers(0, len(group.factors) - 1), st.integers(0, 100)
    ).map(lambda fe: (fe[0], fe[1] % group.factors[fe[0]].order))
    return st.lists(pair, max_size=max_len)


def elements(group, max_len=8):
    """Hypothesis strategy for normal-form elements of a group."""
    return raw_syllable_lists(group, max_len).map(group.element)
