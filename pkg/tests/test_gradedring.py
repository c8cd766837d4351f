"""gradedring: Hilbert data, Sym maps, ideal pieces, generator degrees."""

import numpy as np
import pytest

from kumsyz.errors import DegreeCapError
from kumsyz.exactcore import PrimeField, QQ, field_rank
from kumsyz.ellcurve import Curve
from kumsyz.avkummer import AbelianProduct, ProductBundle
from kumsyz.gradedring import (SectionSystem, generator_degrees, h_normality,
                               ideal_piece, minimal_generators, monomials,
                               sym_dim, sym_map, sym_map_alt)

from oracles import plus_dim, sym_dim as sym_dim_oracle

F = PrimeField(10007)
E1, E2 = Curve(F, 1, 1), Curve(F, 1, 2)
X = AbelianProduct.of([E1, E2])
X1 = AbelianProduct.of([E1])


def kummer(degrees, power=1, prod=X, cap=8):
    B = ProductBundle.from_degrees(prod, degrees)
    return SectionSystem(prod, B, kind="kummer", power=power, cap=cap)


def ambient(degrees, power=1, prod=X1, cap=8):
    B = ProductBundle.from_degrees(prod, degrees)
    return SectionSystem(prod, B, kind="ambient", power=power, cap=cap)


# -- Hilbert values -------------------------------------------------------------


def test_hilbert_kummer_11():
    assert kummer((1, 1)).hilbert_values(4) == [4, 10, 20, 34]


def test_hilbert_kummer_22():
    assert kummer((2, 2)).hilbert_values(4) == [10, 34, 74, 130]


def test_hilbert_elliptic_d3():
    assert ambient((3,)).hilbert_values(3) == [3, 6, 9]


def test_hilbert_matches_closed_form():
    sys_a2 = kummer((1, 1), power=2)
    for k in (1, 2, 3):
        assert sys_a2.dim(k) == plus_dim((1, 1), 2 * k)


def test_degree_cap():
    sys = kummer((1, 1), cap=3)
    with pytest.raises(DegreeCapError):
        sys.slice(4)


def test_q_stab_and_default_h_max():
    assert kummer((1, 1)).q_stab() == 1
    assert kummer((1, 1)).default_h_max(0) == 2
    assert kummer((1, 1)).default_h_max(2) == 3
    assert ambient((3,)).q_stab() == 1


# -- Sym maps and ideals ---------------------------------------------------------


def test_sym_dim_identity():
    for n in (3, 4, 10):
        for k in (1, 2, 3, 4, 5):
            assert sym_dim(n, k) == sym_dim_oracle(n, k)
            assert len(monomials(n, k)) == sym_dim(n, k)


def test_ideal_dims_quartic_system_product_values():
    # the (1,1)-product Kummer embeds 2:1 onto the Segre quadric, so the
    # honest ideal of the image is principal in degree 2
    sys = kummer((1, 1))
    assert [ideal_piece(sys, k).dimension for k in (2, 3, 4)] == [1, 4, 10]
    assert generator_degrees(sys, 4) == {2: 1}
    # the ring itself is not generated in degree 1 here
    assert not h_normality(sys, 2)


def test_ideal_dims_plane_cubic():
    sys = ambient((3,))
    assert ideal_piece(sys, 2).dimension == 0
    assert ideal_piece(sys, 3).dimension == 10 - 9 == 1
    assert generator_degrees(sys, 4) == {3: 1}
    assert h_normality(sys, 2) and h_normality(sys, 3)


def test_ideal_dims_elliptic_quartic():
    sys = ambient((4,))
    assert ideal_piece(sys, 2).dimension == 10 - 8 == 2
    assert generator_degrees(sys, 4) == {2: 2}


def test_ideal_dims_kummer_22():
    sys = kummer((2, 2))
    assert ideal_piece(sys, 2).dimension == 55 - 34 == 21


def test_hnormality_negative_control_L2O():
    sys = ambient((2,))
    sm = sym_map(sys, 2)
    assert field_rank(F, sm.matrix) == 3
    assert sys.dim(2) == 4
    assert not h_normality(sys, 2)


def test_hnormality_kummer_a2():
    sys = kummer((1, 1), power=2)
    for k in (2, 3):
        assert h_normality(sys, k)


def test_bracketing_independence():
    for sys in (ambient((3,)), kummer((1, 1))):
        for k in (2, 3, 4):
            assert np.array_equal(sym_map(sys, k).matrix, sym_map_alt(sys, k))


def test_ideal_dimension_equation():
    sys = kummer((1, 1))
    for k in (2, 3, 4):
        sm = sym_map(sys, k)
        r = field_rank(F, sm.matrix)
        assert ideal_piece(sys, k).dimension == sym_dim(sys.dim_v, k) - r


def test_hypersurface_generators_principal():
    # a system whose ideal starts with a single element in degree k0 has
    # generator multiset exactly {k0: 1}
    sys = ambient((3,))
    assert generator_degrees(sys, 5) == {3: 1}


def test_monotone_consistency_twisted_cubic():
    sys = kummer((3,), prod=X1)
    gd = generator_degrees(sys, 4)
    assert gd == {2: 3}
    for k in (3, 4):
        assert minimal_generators(sys, k) == 0


def test_rational_backend_small_system():
    Eq = Curve(QQ, 1, 1)
    Xq = AbelianProduct.of([Eq])
    sys = SectionSystem(Xq, ProductBundle.from_degrees(Xq, (3,)),
                        kind="ambient", cap=4)
    assert sys.hilbert_values(3) == [3, 6, 9]
    assert ideal_piece(sys, 3).dimension == 1
    assert generator_degrees(sys, 4) == {3: 1}
