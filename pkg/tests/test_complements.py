"""Value, region, Kreweras, and extraction complements, with the two
commuting squares and the symmetry criterion."""

import itertools
from math import comb

import pytest

from nccp.partitions import Partition, enumerate_partitions
from nccp.lattice import refinement_covers
from nccp.trees import kreweras_image
from nccp.complements import (
    CircularPresentation,
    ExtractionImage,
    alpha_diagram_check,
    beta_diagram_check,
    complement_312,
    extraction_complement,
    is_symmetric,
    kreweras_complement,
    presentation_text,
    region_complement,
    rotate_labels,
    value_complement,
)

parse = Partition.parse


def ncp(n):
    return enumerate_partitions(n, "NCP")


# --- value complement -------------------------------------------------------


def test_value_complement_golden():
    assert value_complement(parse("15/46/23")).compact() == "6/23/15/4"


def test_value_complement_extremes():
    assert value_complement(parse("12345")).compact() == "5/4/3/2/1"
    assert value_complement(parse("5/4/3/2/1")).compact() == "12345"


def test_value_complement_is_involution():
    for n in range(1, 6):
        for p in enumerate_partitions(n):
            assert value_complement(value_complement(p)) == p


def test_value_complement_swaps_pattern_families():
    for n in range(1, 6):
        for p in enumerate_partitions(n, "NCCP312"):
            image = value_complement(p)
            assert image.avoids(132)
            assert image.is_noncrossing() and image.is_canonical()


# --- region complement ------------------------------------------------------


def test_region_complement_golden():
    assert region_complement(parse("5/3/124")).compact() == "5/34/12"


def test_region_complement_extremes():
    assert region_complement(parse("12345")).compact() == "5/4/3/2/1"
    assert region_complement(parse("5/4/3/2/1")).compact() == "12345"


def test_region_complement_is_involution():
    for n in range(1, 7):
        for p in ncp(n):
            assert region_complement(region_complement(p)) == p


def test_region_complement_block_counts_sum():
    """The image's block count complements the input's to n+1; equivalently
    the lattice ranks sum to n-1."""
    for n in range(1, 8):
        for p in ncp(n):
            q = region_complement(p)
            assert p.block_count() + q.block_count() == n + 1
            assert p.rank() + q.rank() == n - 1


def test_region_complement_reverses_covers():
    for n in range(2, 7):
        for lam in ncp(n):
            for above in refinement_covers(lam):
                assert region_complement(lam) in refinement_covers(
                    region_complement(above)
                )


def test_region_complement_requires_ncp():
    with pytest.raises(ValueError):
        region_complement(parse("24/13"))  # crossing
    with pytest.raises(ValueError):
        region_complement(parse("12/34"))  # not canonical


# --- Kreweras complement ----------------------------------------------------


def test_kreweras_complement_golden():
    p = parse("78/5/23/146")
    image = kreweras_complement(p)
    assert image.compact() == "7/68/45/2/13"
    assert kreweras_complement(image).compact() == "67/4/358/12"


def test_kreweras_complement_extremes():
    assert kreweras_complement(parse("1234")).compact() == "4/3/2/1"
    assert kreweras_complement(parse("4/3/2/1")).compact() == "1234"


def test_kreweras_complement_is_bijection():
    for n in range(1, 7):
        elements = ncp(n)
        assert len({kreweras_complement(p) for p in elements}) == len(elements)


def test_kreweras_square_shifts_labels_down():
    assert rotate_labels(parse("78/5/23/146")).compact() == "67/4/358/12"
    for n in range(1, 7):
        for p in ncp(n):
            assert kreweras_complement(kreweras_complement(p)) == rotate_labels(p)


# --- the 312-side involution ------------------------------------------------


def test_complement_312_extremes():
    assert complement_312(parse("1234")).compact() == "4/3/2/1"
    assert complement_312(parse("4/3/2/1")).compact() == "1234"


def test_complement_312_is_involution():
    for n in range(1, 6):
        for p in enumerate_partitions(n, "NCCP312"):
            image = complement_312(p)
            assert image.avoids(312)
            assert complement_312(image) == p


def test_complement_312_rejects_pattern():
    with pytest.raises(ValueError):
        complement_312(parse("3/14/2"))


# --- extraction complement --------------------------------------------------


def test_extraction_complement_golden():
    out = extraction_complement(parse("23/15/478/6"))
    assert out.partition.compact() == "7/68/45/2/13"
    assert out.ncp_guaranteed


def test_extraction_complement_extremes():
    assert extraction_complement(parse("12345")).partition.compact() == "5/4/3/2/1"
    assert extraction_complement(parse("5/4/3/2/1")).partition.compact() == "12345"


def test_extraction_complement_flags_non_avoiding_input():
    out = extraction_complement(parse("3/14/2"))
    assert not out.ncp_guaranteed
    assert out.partition.compact() == "24/13"
    assert not out.partition.is_noncrossing()


def test_extraction_image_is_ncp_when_promised():
    for n in range(1, 7):
        for p in enumerate_partitions(n, "NCCP312"):
            out = extraction_complement(p)
            assert out.ncp_guaranteed
            assert out.partition.is_noncrossing()
            assert out.partition.is_canonical()


# --- commuting diagrams -----------------------------------------------------


def test_alpha_diagram_commutes():
    for n in range(1, 7):
        assert alpha_diagram_check(n)


def test_beta_diagram_commutes():
    for n in range(1, 7):
        assert beta_diagram_check(n)


def test_alpha_diagram_pointwise_example():
    p = parse("23/15/478/6")
    assert value_complement(p) == region_complement(kreweras_image(p))
    assert kreweras_image(complement_312(p)) == value_complement(p)


# --- symmetry ---------------------------------------------------------------


def test_is_symmetric_extremes():
    for n in range(1, 7):
        top = Partition(n, (tuple(range(1, n + 1)),))
        bottom = Partition(n, tuple((i,) for i in range(n, 0, -1)))
        assert is_symmetric(top)
        assert is_symmetric(bottom)


def test_is_symmetric_negative():
    assert not is_symmetric(parse("4/123"))
    assert not is_symmetric(parse("34/12"))
    assert is_symmetric(parse("3/124"))  # axis through 1 and 3 swaps 2 and 4


def test_symmetric_counts_are_central_binomials():
    for n in range(1, 7):
        count = sum(1 for p in ncp(n) if is_symmetric(p))
        assert count == comb(n, n // 2)


def test_symmetric_images_tie_value_and_extraction():
    for n in range(1, 7):
        for p in enumerate_partitions(n, "NCCP312"):
            if is_symmetric(kreweras_image(p)):
                assert value_complement(p) == extraction_complement(p).partition


# --- circular presentations -------------------------------------------------


def test_primed_point_orientations():
    region = CircularPresentation(parse("5/3/124"), clockwise_primes=False)
    assert region.primed_points == (5, 4, 3, 2, 1)
    kre = CircularPresentation(parse("5/3/124"), clockwise_primes=True)
    assert kre.primed_points == (1, 2, 3, 4, 5)


def test_chords_of_blocks():
    pres = CircularPresentation(parse("5/3/124"), clockwise_primes=False)
    assert pres.chords == ((1, 2), (2, 4), (4, 1))
    loops_only = CircularPresentation(parse("4/3/2/1"), clockwise_primes=True)
    assert loops_only.chords == ()
    pair = CircularPresentation(parse("4/23/1"), clockwise_primes=True)
    assert pair.chords == ((2, 3),)


def test_prime_groups_golden():
    pres = CircularPresentation(parse("5/3/124"), clockwise_primes=False)
    groups = {frozenset(g) for g in pres.prime_groups()}
    assert groups == {frozenset({5}), frozenset({3, 4}), frozenset({1, 2})}


def test_presentation_rejects_non_ncp():
    with pytest.raises(ValueError):
        CircularPresentation(parse("24/13"), clockwise_primes=True)


def test_presentation_text_golden():
    text = presentation_text(parse("5/3/124"), "region")
    assert text.splitlines() == [
        "circle n=5 mode=region",
        "clockwise: 1 5' 2 4' 3 3' 4 2' 5 1'",
        "solid 1-2",
        "solid 2-4",
        "solid 4-1",
        "dashed 3'-4'",
        "dashed 1'-2'",
    ]


def test_presentation_text_modes():
    assert "mode=kreweras" in presentation_text(parse("1234"), "kreweras")
    with pytest.raises(ValueError):
        presentation_text(parse("1234"), "mirror")
