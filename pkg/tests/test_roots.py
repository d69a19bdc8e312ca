import itertools
import random
from fractions import Fraction as Q

import pytest

from laced.exactlin import Definiteness, RatMatrix, definiteness, short_vectors
from laced.roots import (
    AmbientSpace,
    DynkinType,
    FormSpace,
    ReducibleType,
    RootSet,
    _root_system_check,
    ambient_root,
    classify,
    closure,
    components,
    find_base,
    gen,
    graph_of,
    inner_product,
    is_obtuse,
    is_root_system,
    isometry_to_canonical,
    lattice_root,
    parse_type,
    reflect,
    signed_graph_of,
    signed_permute,
)
from laced.spectra import smith_classify, two_i_minus_adjacency_rows

# Fixed simple system for E8: a path a1-a3-a4-...-a8 with a2 attached at a4,
# verified below by closure against the canonical 240.
E8_SIMPLE = [
    [Q(1, 2), Q(-1, 2), Q(-1, 2), Q(-1, 2), Q(-1, 2), Q(-1, 2), Q(-1, 2), Q(1, 2)],
    [1, 1, 0, 0, 0, 0, 0, 0],
    [-1, 1, 0, 0, 0, 0, 0, 0],
    [0, -1, 1, 0, 0, 0, 0, 0],
    [0, 0, -1, 1, 0, 0, 0, 0],
    [0, 0, 0, -1, 1, 0, 0, 0],
    [0, 0, 0, 0, -1, 1, 0, 0],
    [0, 0, 0, 0, 0, -1, 1, 0],
]


def rs(*vectors):
    space = AmbientSpace(len(vectors[0]))
    return RootSet.of(space, [ambient_root(space, v) for v in vectors])


def closure_by_lattice_scan(vectors, bound):
    """Independent oracle: norm-2 integer combinations with |c_i| <= bound."""
    n = len(vectors)
    dim = len(vectors[0])
    out = set()
    for coeffs in itertools.product(range(-bound, bound + 1), repeat=n):
        vec = tuple(sum(Q(c) * Q(v[k]) for c, v in zip(coeffs, vectors)) for k in range(dim))
        if sum(x * x for x in vec) == 2:
            out.add(vec)
    return out


# --- inner products and reflection ---------------------------------------


def test_inner_product_examples():
    space = AmbientSpace(3)
    r12 = ambient_root(space, [1, -1, 0])
    r23 = ambient_root(space, [0, 1, -1])
    assert inner_product(r12, r12) == 2
    assert inner_product(r12, r23) == -1
    e8 = AmbientSpace(8)
    a = ambient_root(e8, [0, 0, 0, 0, 0, 0, 1, 1])
    b = ambient_root(e8, [Q(-1, 2)] * 6 + [Q(1, 2), Q(1, 2)])
    assert inner_product(a, b) == 1


def test_inner_product_rejects_mixed_spaces():
    x = ambient_root(AmbientSpace(2), [1, -1])
    y = ambient_root(AmbientSpace(3), [1, -1, 0])
    with pytest.raises(ValueError):
        inner_product(x, y)
    form = FormSpace([[2]])
    with pytest.raises(ValueError):
        inner_product(x, lattice_root(form, [1]))


def test_reflect_examples():
    space = AmbientSpace(3)
    x = ambient_root(space, [1, -1, 0])
    assert reflect(x, x) == -x
    y = ambient_root(space, [0, 1, -1])
    assert reflect(x, y) == ambient_root(space, [1, 0, -1])
    orth = ambient_root(space, [1, 1, 0])
    assert inner_product(x, orth) == 0
    assert reflect(x, orth) == x


def test_reflect_rejects_non_integer_inner_product():
    space = AmbientSpace(3)
    a = ambient_root(space, [Q(4, 3), Q(1, 3), Q(1, 3)])
    b = ambient_root(space, [1, 1, 0])
    assert a.norm2() == 2 and b.norm2() == 2
    with pytest.raises(ValueError):
        reflect(a, b)


# --- root set construction ------------------------------------------------


def test_root_set_validation():
    space = AmbientSpace(2)
    with pytest.raises(ValueError):
        RootSet.of(space, [ambient_root(space, [1, 0])])  # norm 1
    other = AmbientSpace(3)
    with pytest.raises(ValueError):
        RootSet.of(space, [ambient_root(other, [1, -1, 0])])
    space3 = AmbientSpace(3)
    a = ambient_root(space3, [Q(4, 3), Q(1, 3), Q(1, 3)])
    b = ambient_root(space3, [1, 1, 0])
    with pytest.raises(ValueError):
        RootSet.of(space3, [a, b])  # non-integer pairwise inner product


def test_root_set_dedupes():
    space = AmbientSpace(2)
    r = ambient_root(space, [1, -1])
    s = RootSet.of(space, [r, ambient_root(space, [1, -1]), -r])
    assert len(s) == 2


def test_form_space_validation():
    with pytest.raises(ValueError):
        FormSpace([[2, 1], [0, 2]])  # not symmetric
    with pytest.raises(ValueError):
        FormSpace([[1]])  # diagonal not 2
    with pytest.raises(ValueError):
        FormSpace([[2, 3], [3, 2]])  # indefinite
    fs = FormSpace([[2, -1], [-1, 2]])
    assert fs.n == 2
    with pytest.raises(ValueError):
        lattice_root(fs, [1])  # wrong length


# --- is_root_system -------------------------------------------------------


def test_is_root_system_examples():
    assert is_root_system(rs([1, -1], [-1, 1]))
    assert not is_root_system(rs([1, -1]))  # missing the negation
    assert is_root_system(rs([1, -1], [-1, 1], [1, 1], [-1, -1]))


def test_empty_set_is_not_a_root_system():
    s = RootSet.of(AmbientSpace(2), [])
    assert not is_root_system(s)


# --- gen -------------------------------------------------------------------


def test_gen_counts():
    assert len(gen("A1")) == 2
    assert len(gen("A2")) == 6
    assert len(gen("D2")) == 4
    assert len(gen("D4")) == 24
    assert len(gen("E6")) == 72
    assert len(gen("E7")) == 126
    assert len(gen("E8")) == 240


def test_gen_rejects_bad_labels():
    for label in ["B2", "A0", "D1", "E5", "E9", "F4", "G2", "A", "8", ""]:
        with pytest.raises(ValueError):
            gen(label)


def test_parse_type():
    assert parse_type("A5") == DynkinType("A", 5)
    assert parse_type(" D10 ") == DynkinType("D", 10)
    with pytest.raises(ValueError):
        parse_type("a5")


def test_gen_vectors_are_integral_or_half_integral():
    for label in ["A3", "D5", "E6", "E7", "E8"]:
        for r in gen(label):
            assert r.den in (1, 2)
            if r.den == 2:
                assert all(v % 2 == 1 for v in map(abs, r.nums))


def test_inner_product_trichotomy_on_generated_systems():
    for label in ["A3", "D4", "E6", "E8"]:
        roots = list(gen(label))
        for i, x in enumerate(roots):
            for y in roots[i + 1 :]:
                t = inner_product(x, y)
                if y == -x:
                    assert t == -2
                else:
                    assert t in (-1, 0, 1)


# --- graphs and components -------------------------------------------------


def test_graph_of_examples():
    orth = rs([1, -1, 0, 0], [0, 0, 1, -1])
    assert graph_of(orth).edges == ()
    a3 = rs([1, -1, 0, 0], [0, 1, -1, 0], [0, 0, 1, -1])
    g = graph_of(a3)
    assert len(g.edges) == 2
    degs = [len(s) for s in g.neighbor_sets()]
    assert sorted(degs) == [1, 1, 2]
    pair = graph_of(gen("A1"))
    assert len(pair.edges) == 1


def test_signed_graph_of_signs():
    s = rs([1, -1, 0], [0, 1, -1], [1, 0, -1])
    g = signed_graph_of(s)
    assert {e[2] for e in g.edges} == {1, -1}


def test_components_examples():
    assert len(components(gen("A2"))) == 1
    two = rs([1, -1, 0, 0], [-1, 1, 0, 0], [0, 0, 1, -1], [0, 0, -1, 1])
    parts = components(two)
    assert len(parts) == 2
    assert all(len(p) == 2 for p in parts)
    assert components(RootSet.of(AmbientSpace(2), [])) == []


def test_is_obtuse_examples():
    assert is_obtuse(rs([1, -1, 0], [0, 1, -1]))
    assert not is_obtuse(rs([1, -1, 0], [-1, 1, 0]))  # dependent
    assert not is_obtuse(rs([1, -1, 0], [1, 0, -1]))  # inner product +1


# --- closure ----------------------------------------------------------------


def test_closure_single_root():
    c = closure(rs([1, -1, 0]))
    assert len(c) == 2


def test_closure_a2_matches_generator_and_oracle():
    seed = rs([1, -1, 0], [0, 1, -1])
    c = closure(seed)
    assert len(c) == 6
    assert c == gen("A2")
    want = closure_by_lattice_scan([(1, -1, 0), (0, 1, -1)], 3)
    assert {r.coords for r in c} == want


def test_closure_idempotent_and_is_root_system():
    seed = rs([1, -1, 0, 0], [0, 1, -1, 0], [0, 0, 1, -1])
    c = closure(seed)
    assert closure(c) == c
    assert _root_system_check(c)  # raw check, bypassing the closure flag


def test_closure_e8_simple_roots():
    space = AmbientSpace(8)
    seed = RootSet.of(space, [ambient_root(space, v) for v in E8_SIMPLE])
    assert is_obtuse(seed)
    c = closure(seed)
    assert len(c) == 240
    assert c == gen("E8")


def test_closure_rejects_empty():
    with pytest.raises(ValueError):
        closure(RootSet.of(AmbientSpace(2), []))


def test_closure_intrinsic_matches_short_vector_oracle():
    rng = random.Random(99)
    done = 0
    while done < 5:
        n = rng.randint(1, 3)
        rows = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                rows[i][j] = rows[j][i] = rng.choice([-1, 0, 1])
        if definiteness(RatMatrix(rows)) is not Definiteness.POSITIVE_DEFINITE:
            continue
        done += 1
        fs = FormSpace(rows)
        seed = RootSet.of(fs, [lattice_root(fs, [1 if k == i else 0 for k in range(n)]) for i in range(n)])
        got = {r.coeffs for r in closure(seed)}
        assert got == set(short_vectors(RatMatrix(rows), 2))


# --- find_base ---------------------------------------------------------------


def test_find_base_a1():
    base = find_base(gen("A1"))
    assert len(base) == 1
    assert list(base)[0] in gen("A1")


def test_find_base_a2():
    base = find_base(gen("A2"))
    assert len(base) == 2
    x, y = base
    assert inner_product(x, y) == -1
    assert closure(base) == gen("A2")


def test_find_base_e8_shape():
    base = find_base(gen("E8"))
    assert len(base) == 8
    st = smith_classify(graph_of(base))
    assert st.label == "E8"  # one branch vertex, legs 1, 2, 4
    assert closure(base) == gen("E8")


def test_find_base_properties_sample():
    for label in ["A4", "D4", "D6", "E6"]:
        phi = gen(label)
        base = find_base(phi)
        assert is_obtuse(base)
        assert closure(base) == phi
        gram = two_i_minus_adjacency_rows(graph_of(base))
        assert definiteness(RatMatrix(gram)) is Definiteness.POSITIVE_DEFINITE


def test_find_base_reducible():
    two = rs([1, -1, 0, 0], [-1, 1, 0, 0], [0, 0, 1, -1], [0, 0, -1, 1])
    base = find_base(two)
    assert len(base) == 2
    assert closure(base) == two


def test_find_base_rejects_non_root_system():
    with pytest.raises(ValueError):
        find_base(rs([1, -1, 0]))


# --- classify -----------------------------------------------------------------


def test_classify_examples():
    assert classify(gen("A5")) == DynkinType("A", 5)
    assert classify(gen("D5")) == DynkinType("D", 5)
    e6 = gen("E6")
    assert len(e6) == 72
    assert classify(e6) == DynkinType("E", 6)


def test_classify_canonical_labels():
    assert classify(gen("D2")) == ReducibleType((DynkinType("A", 1), DynkinType("A", 1)))
    assert classify(gen("D2")).label == "A1+A1"
    assert classify(gen("D3")) == DynkinType("A", 3)


def test_classify_reducible_union():
    two = rs([1, -1, 0, 0], [-1, 1, 0, 0], [0, 0, 1, -1], [0, 0, -1, 1])
    assert classify(two).label == "A1+A1"


def test_classify_rejects_non_root_system():
    with pytest.raises(ValueError):
        classify(rs([1, -1, 0], [0, 1, -1]))


def test_classify_invariant_under_own_isometry():
    for label in ["A3", "D4", "E6"]:
        omega = gen(label)
        t, iso = isometry_to_canonical(omega)
        image = RootSet.of(iso.codomain, [iso.apply(r) for r in omega], validate=False)
        assert classify(image) == t == classify(omega)


# --- isometries -----------------------------------------------------------------


def test_isometry_identity_like_on_canonical():
    t, iso = isometry_to_canonical(gen("A2"))
    assert t == DynkinType("A", 2)
    image = {iso.apply(r) for r in gen("A2")}
    assert image == set(gen("A2"))


def test_isometry_recovers_permuted_a2():
    scr = signed_permute(gen("A2"), [2, 1, 0], [1, 1, 1])
    t, iso = isometry_to_canonical(scr)
    assert t == DynkinType("A", 2)
    assert {iso.apply(r) for r in scr} == set(gen("A2"))


def test_isometry_from_intrinsic_form():
    fs = FormSpace([[2, -1], [-1, 2]])
    seed = RootSet.of(fs, [lattice_root(fs, [1, 0]), lattice_root(fs, [0, 1])])
    phi = closure(seed)
    t, iso = isometry_to_canonical(phi)
    assert t == DynkinType("A", 2)
    imgs = [iso.apply(r) for r in seed]
    assert all(img in gen("A2") for img in imgs)
    assert inner_product(imgs[0], imgs[1]) == -1
    assert {iso.apply(r) for r in phi} == set(gen("A2"))


def test_isometry_preserves_gram_and_fixes_span():
    rng = random.Random(17)
    omega = gen("D4")
    perm = list(range(4))
    rng.shuffle(perm)
    signs = [rng.choice([1, -1]) for _ in range(4)]
    scr = signed_permute(omega, perm, signs)
    t, iso = isometry_to_canonical(scr)
    assert t == DynkinType("D", 4)
    roots = list(scr)
    for x in roots[:6]:
        for y in roots[:6]:
            assert inner_product(iso.apply(x), iso.apply(y)) == inner_product(x, y)
    m = iso.as_rat_matrix()
    qtq = m.transpose().mul(m)
    for x in roots:
        assert qtq.mul_vec(x.coords) == x.coords


def test_isometry_rejects_reducible():
    two = rs([1, -1, 0, 0], [-1, 1, 0, 0], [0, 0, 1, -1], [0, 0, -1, 1])
    with pytest.raises(ValueError):
        isometry_to_canonical(two)


def test_signed_permute_validation():
    with pytest.raises(ValueError):
        signed_permute(gen("A2"), [0, 1], [1, 1, 1])
    with pytest.raises(ValueError):
        signed_permute(gen("A2"), [0, 1, 2], [1, 1, 2])
    fs = FormSpace([[2]])
    s = RootSet.of(fs, [lattice_root(fs, [1])])
    with pytest.raises(ValueError):
        signed_permute(s, [0], [1])


# --- base/closure round trip (sample; full sweep in acceptance)


def test_base_closure_round_trip_sample():
    for label in ["A1", "A5", "D2", "D3", "D7", "E7"]:
        phi = gen(label)
        assert closure(find_base(phi)) == phi


def test_short_vectors_e8_oracle():
    # the lattice enumeration over the simple-root Gram form must recover
    # exactly the 240 canonical roots
    space = AmbientSpace(8)
    simple = [ambient_root(space, v) for v in E8_SIMPLE]
    gram = [[int(inner_product(a, b)) for b in simple] for a in simple]
    coeff_vectors = short_vectors(RatMatrix(gram), 2)
    assert len(coeff_vectors) == 240
    mapped = set()
    for coeffs in coeff_vectors:
        vec = tuple(
            sum(Q(c) * x for c, x in zip(coeffs, col))
            for col in zip(*(r.coords for r in simple))
        )
        mapped.add(vec)
    assert mapped == {r.coords for r in gen("E8")}


def test_intrinsic_route_agrees_with_ambient_route():
    # random subsets of the E8 roots, viewed once through their Gram form
    # (possibly singular, so the radical quotient is exercised) and once in
    # ambient coordinates: both routes must generate the same system
    rng = random.Random(314159)
    e8 = list(gen("E8"))
    for _ in range(25):
        k = rng.randint(2, 9)
        picks = rng.sample(e8, k)
        gram = [[int(inner_product(a, b)) for b in picks] for a in picks]
        fs = FormSpace(gram)
        units = [lattice_root(fs, [1 if j == i else 0 for j in range(k)]) for i in range(k)]
        phi_intrinsic = closure(RootSet.of(fs, units, validate=False))
        phi_ambient = closure(RootSet.of(picks[0].space, picks, validate=False))
        assert len(phi_intrinsic) == len(phi_ambient)
        ti, ta = classify(phi_intrinsic), classify(phi_ambient)
        assert ti.label == ta.label
        if isinstance(ti, DynkinType):
            isometry_to_canonical(phi_intrinsic)  # internally checked, root by root


def test_closure_handles_unusual_denominators():
    # a norm-2 vector with thirds closes to just itself and its negation
    c = closure(rs([Q(4, 3), Q(1, 3), Q(1, 3)]))
    assert len(c) == 2
    assert {r.coords for r in c} == {
        (Q(4, 3), Q(1, 3), Q(1, 3)),
        (Q(-4, 3), Q(-1, 3), Q(-1, 3)),
    }
