"""
Tests for finite sets and maps.
"""

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from viscat import (
    FiniteMap,
    apply,
    classify_map,
    compose,
    identity,
    inverse,
    make_map,
    make_set,
    maps_equal,
    normalize_element,
)
from viscat.errors import (
    DuplicateElement,
    DuplicateSource,
    ElementNotInDomain,
    EmptyIdentifier,
    InvalidElement,
    MissingSource,
    NonComposable,
    NotBijective,
    SourceNotInDomain,
    TargetNotInCodomain,
)
from viscat.finset import hom_set, image

SIZES = (0, 1, 2, 3)
SETS = {n: make_set(f"S{n}", [f"e{i}" for i in range(n)]) for n in SIZES}


class TestNormalizeElement:
    """Tests for element token normalisation."""

    def test_collapses_whitespace(self):
        """Surrounding whitespace is stripped and inner runs collapse."""
        assert normalize_element("  Alan   was\tbest ") == "Alan was best"

    def test_applies_nfc(self):
        """Decomposed characters compose to their NFC form."""
        assert normalize_element("e\u0301") == "\u00e9"

    def test_rejects_empty(self):
        """A token with nothing but whitespace is invalid."""
        with pytest.raises(InvalidElement):
            normalize_element("   ")

    def test_rejects_control_characters(self):
        """Non-printable characters are rejected with their code point."""
        with pytest.raises(InvalidElement, match="U\\+0007"):
            normalize_element("a\x07b")


class TestMakeSet:
    """Tests for make_set()."""

    def test_keeps_declared_order(self):
        """Elements keep the order they were given in."""
        s = make_set("Data", ["beth:78", "alan:90"])
        assert list(s) == ["beth:78", "alan:90"]
        assert len(s) == 2

    def test_rejects_duplicates_after_normalisation(self):
        """Two spellings of one token are the same element."""
        with pytest.raises(DuplicateElement) as excinfo:
            make_set("Knowledge", ["Nobody failed", "Nobody  failed"])
        assert excinfo.value.element == "Nobody failed"
        assert excinfo.value.set_id == "Knowledge"

    def test_rejects_empty_id(self):
        """Sets need a name."""
        with pytest.raises(EmptyIdentifier):
            make_set(" ", ["a"])

    def test_equality_ignores_order(self):
        """Sets with the same id and members are equal."""
        assert make_set("A", ["x", "y"]) == make_set("A", ["y", "x"])
        assert make_set("A", ["x"]) != make_set("B", ["x"])

    def test_empty_set_is_allowed(self):
        """The empty set is an object like any other."""
        assert len(make_set("Empty", [])) == 0


class TestMakeMap:
    """Tests for make_map() construction errors."""

    @pytest.fixture
    def ends(self):
        return make_set("Data", ["alan:90", "beth:78"]), make_set("Representation", ["bar_alan", "bar_beth"])

    def test_builds_total_map(self, ends):
        """A map with one pair per domain element is built in domain order."""
        dom, cod = ends
        f = make_map("render", dom, cod, [("beth:78", "bar_beth"), ("alan:90", "bar_alan")])
        assert f.table == (("alan:90", "bar_alan"), ("beth:78", "bar_beth"))
        assert f("beth:78") == "bar_beth"

    def test_missing_source(self, ends):
        """A domain element without an image is reported by name."""
        dom, cod = ends
        with pytest.raises(MissingSource) as excinfo:
            make_map("render", dom, cod, [("alan:90", "bar_alan")])
        assert excinfo.value.element == "beth:78"

    def test_duplicate_source(self, ends):
        dom, cod = ends
        with pytest.raises(DuplicateSource):
            make_map("render", dom, cod, [("alan:90", "bar_alan"), ("alan:90", "bar_beth")])

    def test_source_outside_domain(self, ends):
        dom, cod = ends
        with pytest.raises(SourceNotInDomain):
            make_map("render", dom, cod, [("carl:72", "bar_alan")])

    def test_target_outside_codomain(self, ends):
        dom, cod = ends
        with pytest.raises(TargetNotInCodomain) as excinfo:
            make_map("render", dom, cod, [("alan:90", "bar_carl"), ("beth:78", "bar_beth")])
        assert excinfo.value.target == "bar_carl"

    def test_apply_outside_domain(self, ends):
        """Applying a map off its domain raises ElementNotInDomain."""
        dom, cod = ends
        f = make_map("render", dom, cod, [("alan:90", "bar_alan"), ("beth:78", "bar_beth")])
        with pytest.raises(ElementNotInDomain):
            apply(f, "bar_alan")

    def test_equality_ignores_id(self, ends):
        """Maps compare extensionally; the id is only a label."""
        dom, cod = ends
        pairs = [("alan:90", "bar_alan"), ("beth:78", "bar_beth")]
        assert make_map("render", dom, cod, pairs) == make_map("render_2", dom, cod, pairs)


class TestCompose:
    """Tests for composition and identities."""

    def test_rejects_mismatched_boundary(self):
        """compose(g, f) needs cod(f) == dom(g) and names both objects."""
        f = make_map("f", SETS[1], SETS[2], [("e0", "e1")])
        g = make_map("g", SETS[1], SETS[1], [("e0", "e0")])
        with pytest.raises(NonComposable) as excinfo:
            compose(g, f)
        assert excinfo.value.left == "S2"
        assert excinfo.value.right == "S1"

    def test_composite_id_reads_right_to_left(self):
        f = make_map("f", SETS[1], SETS[2], [("e0", "e1")])
        g = make_map("g", SETS[2], SETS[1], [("e0", "e0"), ("e1", "e0")])
        assert compose(g, f).id == "g∘f"

    def test_identity_id(self):
        assert identity(SETS[2]).id == "1_S2"

    @pytest.mark.parametrize("a,b", list(itertools.product(SIZES, repeat=2)))
    def test_identity_laws_exhaustive(self, a, b):
        """f∘1 = f = 1∘f for every map between sets of size at most 3."""
        for f in hom_set(SETS[a], SETS[b]):
            assert maps_equal(compose(f, identity(SETS[a])), f)
            assert maps_equal(compose(identity(SETS[b]), f), f)

    @pytest.mark.parametrize("a,b,c,d", list(itertools.product(SIZES, repeat=4)))
    def test_associativity_exhaustive(self, a, b, c, d):
        """(h∘g)∘f = h∘(g∘f) for every triple of maps between sets of size at most 3."""
        for f in hom_set(SETS[a], SETS[b]):
            for g in hom_set(SETS[b], SETS[c]):
                gf = compose(g, f)
                for h in hom_set(SETS[c], SETS[d]):
                    assert maps_equal(compose(compose(h, g), f), compose(h, gf))


class TestClassifyMap:
    """Tests for set-level monic/epic/isic."""

    def test_counts_match_combinatorics(self):
        """Injections, surjections and bijections are counted correctly."""
        three_to_two = [classify_map(f) for f in hom_set(SETS[3], SETS[2])]
        assert sum(c.surjective for c in three_to_two) == 6
        assert not any(c.injective for c in three_to_two)

        two_to_three = [classify_map(f) for f in hom_set(SETS[2], SETS[3])]
        assert sum(c.injective for c in two_to_three) == 6
        assert not any(c.surjective for c in two_to_three)

        three_to_three = [classify_map(f) for f in hom_set(SETS[3], SETS[3])]
        assert sum(c.bijective for c in three_to_three) == 6
        assert all(c.endomorphic for c in three_to_three)
        assert all(c.injective == c.surjective for c in three_to_three)

    @pytest.mark.parametrize("a,b", list(itertools.product(SIZES, repeat=2)))
    def test_agrees_with_definitions(self, a, b):
        """Flags match the textbook definitions for every map between sets of size at most 3."""
        for f in hom_set(SETS[a], SETS[b]):
            targets = [f.lookup[x] for x in f.dom.elements]
            injective = len(set(targets)) == len(targets)
            surjective = set(targets) == set(f.cod.elements)
            c = classify_map(f)
            assert (c.injective, c.surjective, c.bijective) == (injective, surjective, injective and surjective)
            assert c.endomorphic == (a == b)

    @pytest.mark.parametrize("n", range(5))
    def test_endomaps_collapse(self, n):
        """An endomap of a set of size at most 4 is injective exactly when it is surjective."""
        s = make_set(f"E{n}", [f"e{i}" for i in range(n)])
        for f in hom_set(s, s):
            c = classify_map(f)
            assert c.injective == c.surjective == c.bijective

    def test_reports_collision_and_missed(self):
        """Witnesses name the colliding pair and the first unhit element."""
        f = make_map("f", SETS[2], SETS[3], [("e0", "e1"), ("e1", "e1")])
        c = classify_map(f)
        assert c.collision == ("e0", "e1")
        assert c.missed == "e0"
        assert "share an image" in c.describe_failure()

    def test_empty_domain_is_injective(self):
        f = make_map("f", SETS[0], SETS[2], [])
        c = classify_map(f)
        assert c.injective
        assert not c.surjective

    def test_image_in_codomain_order(self):
        f = make_map("f", SETS[2], SETS[3], [("e0", "e2"), ("e1", "e0")])
        assert image(f) == ("e0", "e2")


class TestInverse:
    """Tests for inverse()."""

    def test_inverts_every_bijection(self):
        """g∘f and f∘g are identities for every bijection of a 3-element set."""
        unit = identity(SETS[3])
        for f in hom_set(SETS[3], SETS[3]):
            if not classify_map(f).bijective:
                continue
            g = inverse(f)
            assert maps_equal(compose(g, f), unit)
            assert maps_equal(compose(f, g), unit)

    def test_rejects_non_bijection(self):
        f = make_map("f", SETS[2], SETS[2], [("e0", "e0"), ("e1", "e0")])
        with pytest.raises(NotBijective, match="not bijective"):
            inverse(f)


@st.composite
def composable_triples(draw):
    sizes = draw(st.lists(st.integers(min_value=1, max_value=4), min_size=4, max_size=4))
    sets = [make_set(f"T{i}", [f"x{j}" for j in range(n)]) for i, n in enumerate(sizes)]
    maps = []
    for index, (dom, cod) in enumerate(zip(sets, sets[1:])):
        targets = draw(st.lists(st.sampled_from(cod.elements), min_size=len(dom), max_size=len(dom)))
        maps.append(FiniteMap(id=f"m{index}", dom=dom, cod=cod, table=tuple(zip(dom.elements, targets))))
    return maps


class TestLawsProperty:
    """Property tests over random maps between small sets."""

    @given(composable_triples())
    def test_associativity(self, triple):
        f, g, h = triple
        assert maps_equal(compose(compose(h, g), f), compose(h, compose(g, f)))

    @given(composable_triples())
    def test_identity(self, triple):
        f = triple[0]
        assert maps_equal(compose(f, identity(f.dom)), f)
        assert maps_equal(compose(identity(f.cod), f), f)
