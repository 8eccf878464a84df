from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from centralizer_lab.centralisers import centre
from centralizer_lab.errors import (
    DimensionMismatch,
    InvalidPermutation,
    NotAGroup,
    NotASubgroup,
    NotNormal,
    OrderCapExceeded,
    UnsupportedSpec,
)
from centralizer_lab.groupio import (
    detect_format,
    load_group_file,
    read_cayley,
    read_permutations,
    regular_generators,
    write_cayley,
    write_permutations,
)
from centralizer_lab.groups import (
    ElementSet,
    GroupTable,
    are_isomorphic,
    build_from_permutations,
    build_from_table,
    cycle_notation,
    direct_product,
    find_isomorphism,
    is_normal,
    quotient_by_normal,
    subgroup_as_group,
    subgroup_closure,
)
from centralizer_lab.standard import (
    cyclic,
    dicyclic,
    dihedral,
    elementary_abelian,
    heisenberg_mod_p,
    standard_group,
    symmetric,
    trivial_group,
)

from conftest import ALL_NAMES, group


def assert_group_axioms(G: GroupTable) -> None:
    n = G.order
    mul, inv = G.mul, G.inv
    for g in range(n):
        assert mul[0][g] == g and mul[g][0] == g
        assert mul[g][inv[g]] == 0 and mul[inv[g]][g] == 0
        assert all(0 <= x < n for x in mul[g])
    if n <= 64:
        for a, b, c in itertools.product(range(n), repeat=3):
            assert mul[mul[a][b]][c] == mul[a][mul[b][c]]
    else:
        arr = G.array
        for a in range(n):
            assert (arr[arr[a]] == arr[a][arr]).all()


# ElementSet


def test_element_set_basics():
    S = ElementSet.of(6, [0, 2, 5])
    assert len(S) == 3 and S.cardinality == 3
    assert list(S) == [0, 2, 5] and 2 in S and 1 not in S
    assert ElementSet.full(6).cardinality == 6 and ElementSet.empty(6).cardinality == 0
    T = ElementSet.of(6, [2, 3])
    assert list(S & T) == [2] and list(S | T) == [0, 2, 3, 5] and list(S - T) == [0, 5]
    assert ElementSet.of(6, [2]) < S and not (T <= S)


def test_element_set_rejects_out_of_range_and_mixed_owners():
    with pytest.raises(ValueError):
        ElementSet.of(3, [3])
    with pytest.raises(ValueError):
        ElementSet.of(3, [0]) & ElementSet.of(4, [0])


# build_from_table


def test_trivial_and_c2_tables():
    G = build_from_table(1, [[0]])
    assert G.order == 1 and G.inv == (0,)
    C2 = build_from_table(2, [[0, 1], [1, 0]])
    assert C2.is_abelian and C2.inv == (0, 1)


def test_altered_c3_table_is_rejected():
    raw = [[0, 1, 2], [1, 2, 0], [2, 0, 1]]
    raw[2][2] = 2
    with pytest.raises(NotAGroup):
        build_from_table(3, raw)


def test_ragged_table_and_bad_entries():
    with pytest.raises(DimensionMismatch):
        build_from_table(2, [[0, 1], [1]])
    with pytest.raises(NotAGroup):
        build_from_table(2, [[0, 2], [1, 0]])


def test_non_associative_loop_is_rejected():
    # a Latin square with identity 0 that is not associative (order 5 loop)
    raw = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(NotAGroup, match="associativity"):
        build_from_table(5, raw)
    with pytest.raises(NotAGroup):
        build_from_table(5, raw, strict=True)


def test_identity_is_relabelled_to_zero():
    # C3 with identity stored at index 2
    raw = [[1, 2, 0], [2, 0, 1], [0, 1, 2]]
    G = build_from_table(3, raw, element_names=["a", "b", "e"])
    assert G.element_names[0] == "e"
    assert_group_axioms(G)
    assert are_isomorphic(G, cyclic(3))


@given(st.integers(min_value=1, max_value=12), st.randoms(use_true_random=False))
def test_relabelled_cyclic_tables_validate(n, rnd):
    perm = list(range(n))
    rnd.shuffle(perm)
    # relabel C_n by perm: element i is stored at perm[i]
    raw = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            raw[perm[a]][perm[b]] = perm[(a + b) % n]
    G = build_from_table(n, raw)
    assert_group_axioms(G)
    assert are_isomorphic(G, cyclic(n))


# permutations


def test_s3_from_permutations():
    G = build_from_permutations(3, [[1, 2, 0], [1, 0, 2]])
    assert G.order == 6 and not G.is_abelian
    assert are_isomorphic(G, dihedral(6))
    assert "(0,1,2)" in G.element_names and G.element_names[0] == "()"


def test_klein_four_from_permutations():
    G = build_from_permutations(4, [[1, 0, 3, 2], [2, 3, 0, 1]])
    assert G.order == 4 and G.is_abelian
    assert are_isomorphic(G, elementary_abelian(2, 2))


def test_empty_generating_set_gives_trivial_group():
    assert build_from_permutations(2, []).order == 1


def test_permutation_errors():
    with pytest.raises(InvalidPermutation):
        build_from_permutations(3, [[0, 0, 1]])
    with pytest.raises(InvalidPermutation):
        build_from_permutations(3, [[0, 1]])
    with pytest.raises(OrderCapExceeded):
        build_from_permutations(5, [[1, 2, 3, 4, 0], [1, 0, 2, 3, 4]], cap=50)


def test_composition_applies_left_factor_first():
    G = build_from_permutations(3, [[1, 2, 0], [1, 0, 2]])
    a, b = G.element("(0,1,2)"), G.element("(0,1)")
    # 0 -a-> 1 -b-> 0, 1 -> 2 -> 2, 2 -> 0 -> 1
    assert G.element_names[G.mul[a][b]] == "(1,2)"


def test_cycle_notation():
    assert cycle_notation([0, 1, 2]) == "()"
    assert cycle_notation([1, 0, 3, 2]) == "(0,1)(2,3)"


# standard families


@pytest.mark.parametrize(
    "spec, order, abelian",
    [
        ("cyclic(4)", 4, True),
        ("dihedral(6)", 6, False),
        ("dihedral(8)", 8, False),
        ("quaternion(8)", 8, False),
        ("generalized_quaternion(16)", 16, False),
        ("symmetric(4)", 24, False),
        ("alternating(5)", 60, False),
        ("elementary_abelian(2,3)", 8, True),
        ("heisenberg_mod_p(3)", 27, False),
    ],
)
def test_standard_group_specs(spec, order, abelian):
    G = standard_group(spec)
    assert G.order == order and G.is_abelian == abelian
    assert_group_axioms(G)


def test_standard_group_examples():
    assert are_isomorphic(standard_group("dihedral(6)"), symmetric(3))
    C4 = cyclic(4)
    assert 4 in C4.element_orders
    H = heisenberg_mod_p(3)
    assert centre(H).cardinality == 3
    # class 2: commutators are central
    Z = centre(H)
    assert all(H.commutator(a, b) in Z for a in range(27) for b in range(27))


def test_standard_group_rejects_bad_specs():
    for spec in ["dihedral(7)", "quaternion(16)", "symmetric(7)", "elementary_abelian(4,2)", "nope(3)", "cyclic(1,2)"]:
        with pytest.raises(UnsupportedSpec):
            standard_group(spec)


def test_quaternion_relations():
    Q = dicyclic(8)
    orders = sorted(Q.element_orders)
    assert orders == [1, 2, 4, 4, 4, 4, 4, 4]
    assert not are_isomorphic(Q, dihedral(8))


# products, subgroups, quotients


def test_direct_products():
    V = direct_product(cyclic(2), cyclic(2))
    assert are_isomorphic(V, elementary_abelian(2, 2))
    S3 = symmetric(3)
    assert are_isomorphic(direct_product(S3, trivial_group()), S3)
    P = direct_product(S3, S3)
    assert P.order == 36 and centre(P).cardinality == 1
    assert_group_axioms(P)
    with pytest.raises(OrderCapExceeded):
        direct_product(symmetric(5), symmetric(5), cap=1000)


def test_subgroup_closure_examples():
    S3 = symmetric(3)
    assert list(subgroup_closure(S3, ElementSet.empty(6))) == [0]
    assert subgroup_closure(S3, S3.elements([S3.element("(0,1,2)")])).cardinality == 3
    D8 = dihedral(8)
    assert subgroup_closure(D8, D8.elements([D8.element("r")])).cardinality == 4


@given(st.sampled_from(ALL_NAMES[:30]), st.data())
def test_subgroup_closure_idempotent_and_monotone(name, data):
    G = group(name)
    idx = st.integers(0, G.order - 1)
    A = G.elements(data.draw(st.lists(idx, max_size=3)))
    B = A | G.elements(data.draw(st.lists(idx, max_size=2)))
    HA = subgroup_closure(G, A)
    assert subgroup_closure(G, HA) == HA
    assert HA <= subgroup_closure(G, B)


def test_subgroup_as_group_examples():
    S3 = symmetric(3)
    H, emb = subgroup_as_group(S3, S3.all_elements())
    assert are_isomorphic(H, S3) and emb.is_homomorphism()
    C = subgroup_closure(S3, S3.elements([S3.element("(0,1,2)")]))
    H, emb = subgroup_as_group(S3, C)
    assert are_isomorphic(H, cyclic(3)) and emb.is_homomorphism()
    D8 = dihedral(8)
    H, _ = subgroup_as_group(D8, D8.elements([0, D8.element("r^2")]))
    assert are_isomorphic(H, cyclic(2))
    with pytest.raises(NotASubgroup):
        subgroup_as_group(D8, D8.elements([0, D8.element("r")]))


def test_quotient_examples():
    D8 = dihedral(8)
    Q, proj = quotient_by_normal(D8, centre(D8))
    assert Q.order == 4 and Q.is_abelian and are_isomorphic(Q, elementary_abelian(2, 2))
    assert proj.is_homomorphism()
    S3 = symmetric(3)
    N = subgroup_closure(S3, S3.elements([S3.element("(0,1,2)")]))
    assert are_isomorphic(quotient_by_normal(S3, N)[0], cyclic(2))
    with pytest.raises(NotNormal):
        quotient_by_normal(S3, S3.elements([0, S3.element("(0,1)")]))


@pytest.mark.parametrize("name", ALL_NAMES)
def test_quotient_by_trivial_subgroup_is_the_group(name):
    G = group(name)
    Q, proj = quotient_by_normal(G, G.elements([0]))
    assert Q.mul == G.mul and proj.images == tuple(range(G.order))


def test_isomorphism_witness_is_an_isomorphism():
    G, H = dihedral(6), symmetric(3)
    phi = find_isomorphism(G, H)
    assert phi is not None and sorted(phi) == list(range(6))
    assert all(phi[G.mul[a][b]] == H.mul[phi[a]][phi[b]] for a in range(6) for b in range(6))
    assert find_isomorphism(dihedral(8), dicyclic(8)) is None
    S3 = symmetric(3)
    assert not is_normal(S3, S3.elements([0, S3.element("(0,1)")]))
    assert is_normal(S3, centre(S3))


# catalog invariants and file formats


@pytest.mark.parametrize("name", ALL_NAMES)
def test_catalog_group_axioms(name):
    assert_group_axioms(group(name))


@pytest.mark.parametrize("name", ALL_NAMES)
def test_cayley_round_trip_is_identical(name):
    G = group(name)
    text = write_cayley(G)
    assert detect_format(text) == "cayley"
    H = read_cayley(text, name)
    assert H == G and H.inv == G.inv
    raw = build_from_table(G.order, [list(r) for r in G.mul], element_names=G.element_names)
    assert raw == G


@pytest.mark.parametrize("name", ["D8", "Q8", "C2xC4", "A4"])
def test_regular_permutation_dump_reloads_isomorphic(name):
    G = group(name)
    text = write_permutations(G.order, regular_generators(G))
    assert detect_format(text) == "perm"
    assert are_isomorphic(read_permutations(text), G)


def test_permutation_file_round_trip(tmp_path):
    text = write_permutations(4, [[1, 2, 3, 0], [1, 0, 2, 3]])
    path = tmp_path / "s4.perm"
    path.write_text("# symmetric group\n" + text)
    G = load_group_file(path)
    assert G.name == "s4" and G == symmetric(4)


def test_cayley_file_with_comments_and_names(tmp_path):
    path = tmp_path / "v4.txt"
    path.write_text("# Klein\norder 4\nnames e a b c\n0 1 2 3\n1 0 3 2\n2 3 0 1\n3 2 1 0\n")
    G = load_group_file(path)
    assert G.element_names == ("e", "a", "b", "c") and G.is_abelian
