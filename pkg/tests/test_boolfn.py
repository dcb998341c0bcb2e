import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cubefourier import (
    Bias,
    GraphPropertySpec,
    TruthTable,
    and_fn,
    clique_indicator,
    critical_p0,
    dictator,
    discrete_derivative,
    format_truth_table,
    from_bits,
    majority,
    mux3,
    or_fn,
    parity,
    parse_truth_table,
    random_function,
    table_to_hex,
    tribes,
)
from cubefourier.boolfn import RealTable, load_truth_table, save_truth_table
from cubefourier.errors import InputError


def test_dictator_copies_its_coordinate():
    f = dictator(3, 2)
    for mask in range(8):
        assert f.bit(mask) == (mask >> 1) & 1


def test_parity_counts_overlap():
    f = parity(4, 0b0101)
    for mask in range(16):
        assert f.value(mask) == (-1) ** bin(mask & 0b0101).count("1")


def test_majority3_truth_table():
    assert majority(3).bits.tolist() == [0, 0, 0, 1, 0, 1, 1, 1]


def test_majority_needs_odd_n():
    with pytest.raises(InputError):
        majority(4)


def test_mux3_selects_by_first_bit():
    f = mux3()
    for mask in range(8):
        x1, x2, x3 = mask & 1, (mask >> 1) & 1, (mask >> 2) & 1
        assert f.bit(mask) == (x2 if x1 else x3)


def test_and_or_are_complementary_corners():
    assert and_fn(2).bits.tolist() == [0, 0, 0, 1]
    assert or_fn(2).bits.tolist() == [0, 1, 1, 1]


def test_tribes_width_one_is_or():
    assert tribes(1, 3) == or_fn(3)


def test_tribes_single_tribe_is_and():
    assert tribes(3, 1) == and_fn(3)


def test_sign_encoding_maps_bit_one_to_minus_one():
    f = from_bits(1, [0, 1])
    assert f.sign_values().tolist() == [1.0, -1.0]


@given(st.integers(1, 6), st.integers(0, 2**31 - 1))
def test_random_function_is_reproducible(n, seed):
    assert random_function(n, seed) == random_function(n, seed)


def test_random_function_density_extremes():
    assert random_function(4, 0, density=0.0).bits.sum() == 0
    assert random_function(4, 0, density=1.0).bits.sum() == 16


def test_tables_are_immutable():
    f = majority(3)
    with pytest.raises(ValueError):
        f.bits[0] = 1


def test_bad_bits_rejected():
    with pytest.raises(InputError):
        from_bits(2, [0, 1, 2, 0])
    with pytest.raises(InputError):
        from_bits(2, [0, 1, 1])


# --- bias ---------------------------------------------------------------


def test_exact_bias_value():
    b = Bias.exact(3, 3)
    assert b.p == 3 / 8
    assert b.is_exact
    assert str(b) == "3/2^3"


def test_bias_rejects_endpoints():
    with pytest.raises(InputError):
        Bias.general(0.0)
    with pytest.raises(InputError):
        Bias.general(1.0)
    with pytest.raises(InputError):
        Bias.exact(4, 2)


def test_general_bias_has_no_fraction():
    with pytest.raises(InputError):
        Bias.general(0.3).as_fraction()


# --- derivative ----------------------------------------------------------


def test_derivative_of_dictator_is_one():
    g = discrete_derivative(dictator(3, 2), 2)
    assert g.n == 2
    assert np.all(g.values == 1.0)


def test_derivative_of_unused_coordinate_is_zero():
    g = discrete_derivative(dictator(3, 1), 3)
    assert np.all(g.values == 0.0)


@given(st.integers(1, 5), st.integers(0, 1000), st.integers(1, 5))
def test_derivative_values_lie_in_minus_one_zero_one(n, seed, i):
    if i > n:
        i = 1 + (i % n)
    g = discrete_derivative(random_function(n, seed), i)
    assert set(np.unique(g.values)) <= {-1.0, 0.0, 1.0}


def test_derivative_matches_pointwise_definition():
    f = random_function(4, 99)
    i = 3
    g = discrete_derivative(f, i)
    # rest-mask r encodes the other coordinates in order, skipping i
    low = (1 << (i - 1)) - 1
    for r in range(1 << 3):
        x0 = (r & low) | ((r & ~low) << 1)
        x1 = x0 | (1 << (i - 1))
        assert g.values[r] == (f.value(x0) - f.value(x1)) / 2


# --- graph property ------------------------------------------------------


def test_edge_indexing_is_lexicographic():
    spec = GraphPropertySpec(4, 3)
    assert spec.edges() == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    for k, (u, v) in enumerate(spec.edges()):
        assert spec.edge_index(u, v) == k
        assert spec.edge_index(v, u) == k


def test_triangle_indicator_smallest_case():
    spec = GraphPropertySpec(3, 3)
    f = clique_indicator(spec)
    # only the complete graph on 3 vertices contains a triangle
    assert f.bits.sum() == 1
    assert f.bit(0b111) == 1


def test_clique_count_at_full_graph():
    spec = GraphPropertySpec(5, 3)
    f = clique_indicator(spec)
    assert f.bit((1 << spec.n_edges) - 1) == 1
    assert f.bit(0) == 0


def test_clique_indicator_is_monotone():
    # adding an edge can only create cliques, never destroy one
    for nv in (4, 5):
        spec = GraphPropertySpec(nv, 3)
        f = clique_indicator(spec)
        masks = np.arange(1 << spec.n_edges)
        for e in range(spec.n_edges):
            with_e = f.bits[masks | (1 << e)]
            assert bool(np.all(with_e >= f.bits))


def test_critical_p0_solves_its_equation():
    from math import comb

    spec = GraphPropertySpec(6, 3)
    p0 = critical_p0(spec).p
    assert abs(comb(6, 3) * p0 ** comb(3, 2) - 0.5) < 1e-12


def test_critical_p0_triangle_closed_form():
    # one potential clique, three edges: p0 solves p^3 = 1/2
    assert critical_p0(GraphPropertySpec(3, 3)).p == pytest.approx(
        0.5 ** (1.0 / 3.0), abs=1e-15
    )


# --- text format ----------------------------------------------------------


def test_format_parse_roundtrip():
    f = random_function(5, 3)
    assert parse_truth_table(format_truth_table(f)) == f


def test_parse_hex_variant():
    f = majority(3)
    text = f"n=3\nhex:{table_to_hex(f)}\n"
    assert parse_truth_table(text) == f


def test_table_to_hex_matches_bit_order():
    # mask 0 is the most significant bit of the hex body
    f = from_bits(2, [1, 0, 0, 0])
    assert table_to_hex(f) == "8"
    f2 = from_bits(2, [0, 0, 0, 1])
    assert table_to_hex(f2) == "1"


@given(st.integers(1, 6), st.integers(0, 10_000))
def test_hex_roundtrip(n, seed):
    f = random_function(n, seed)
    text = f"n={n}\nhex:{table_to_hex(f)}\n"
    assert parse_truth_table(text) == f


def test_parse_rejects_malformed_input():
    with pytest.raises(InputError):
        parse_truth_table("2\n0101\n")
    with pytest.raises(InputError):
        parse_truth_table("n=2\n010\n")
    with pytest.raises(InputError):
        parse_truth_table("n=2\n01x1\n")
    with pytest.raises(InputError):
        parse_truth_table("n=2\nhex:zz\n")
    with pytest.raises(InputError):
        parse_truth_table("n=2\nhex:123\n")


def test_file_roundtrip(tmp_path):
    f = random_function(4, 11)
    path = tmp_path / "f.tt"
    save_truth_table(f, path)
    assert load_truth_table(path) == f
    # writers always emit the character form
    assert path.read_text().splitlines()[1].strip("01") == ""


def test_real_table_validates_shape():
    with pytest.raises(InputError):
        RealTable(2, np.zeros(3))
    with pytest.raises(InputError):
        RealTable(1, np.array([1.0, np.inf]))
