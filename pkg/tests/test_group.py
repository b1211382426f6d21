"""Group constructors: orders, unitarity, closure behaviour, Springer relations."""

import json

import pytest

from sigpair.cyclotomic import root_of_unity
from sigpair.group import (CapExceeded, Matrix2, NotUnitary, antidiag,
                           binary_dihedral, binary_polyhedral, closure,
                           conjugate, cyclic_gamma, diag, dihedral,
                           dump_generators, identity, load_generators,
                           springer_generators, trivial_group)

NEG_I = Matrix2(-1, 0, 0, -1)


def test_closure_of_minus_identity():
    g = closure([NEG_I])
    assert g.order == 2
    assert g.elements[0].is_identity()


def test_closure_requires_unitary():
    with pytest.raises(NotUnitary) as err:
        closure([diag(1, 1), diag(2, 1)])
    assert err.value.index == 1


def test_closure_cap():
    # an order-20 group does not fit below a cap of 10
    with pytest.raises(CapExceeded):
        closure([diag(root_of_unity(20, 1), root_of_unity(20, 19))], cap=10)


def test_closure_generator_order_independence():
    r, s, t = springer_generators("T")
    a, b = s * t.inverse(), t
    assert closure([a, b]).element_keys() == closure([b, a]).element_keys()


def test_closure_idempotent_on_groups():
    g = cyclic_gamma(6, 5)
    again = closure(g.elements)
    assert again.element_keys() == g.element_keys()
    assert again.order == g.order


def test_cyclic_gamma():
    assert cyclic_gamma(1, 1).order == 1
    g2 = cyclic_gamma(2, 1)
    assert g2.order == 2 and g2.elements[1] == NEG_I
    g54 = cyclic_gamma(5, 4)
    assert g54.order == 5
    assert all(m.det() == 1 for m in g54)
    assert all(m.b.is_zero() and m.c.is_zero() for m in g54)


def test_dihedral():
    assert dihedral(1).order == 2
    assert dihedral(3).order == 6
    d4 = dihedral(4)
    assert d4.order == 8
    assert not d4.is_su2()  # reflections have determinant -1
    assert any(m.det() == -1 for m in d4)


def test_binary_dihedral():
    assert binary_dihedral(1).order == 4
    b1 = binary_dihedral(1)
    j = antidiag(1, -1)
    assert b1.element_keys() == {identity().key(), NEG_I.key(), j.key(), (-j).key()}
    assert binary_dihedral(2).order == 8
    b3 = binary_dihedral(3)
    assert b3.order == 12
    assert b3.is_su2()


def test_group_axioms_all_families():
    for g in (cyclic_gamma(6, 2), dihedral(5), binary_dihedral(3),
              binary_polyhedral("T")):
        keys = g.element_keys()
        assert len(keys) == g.order
        assert g.elements[0].is_identity()
        for m in g:
            assert m.is_unitary()
            assert (m.dagger()).key() in keys  # inverse is a member
        # closed under product (spot-check a slice to keep it quick)
        for m in g.elements[:6]:
            for w in g.elements[:6]:
                assert (m * w).key() in keys


def test_binary_polyhedral_orders_and_su2():
    for kind, order in (("T", 24), ("O", 48), ("I", 120)):
        g = binary_polyhedral(kind)
        assert g.order == order
        assert g.is_su2()


def test_tetrahedral_relations():
    r, s, t = springer_generators("T")
    a, b = s * t.inverse(), t
    assert a ** 3 == b ** 3 == (a * b) ** 2
    assert a ** 3 == NEG_I


def test_octahedral_relations():
    r, s, t = springer_generators("O")
    assert (r * t) ** 4 == NEG_I
    assert t ** 3 == NEG_I
    assert (r * t * t) ** 2 == NEG_I


def test_icosahedral_relations_and_enumeration():
    r, s, t = springer_generators("I")
    assert r ** 5 == NEG_I
    # the printed generator relation holds with s and t composed this way
    # round; both b = r^4 t s and b = r^4 s t generate the same group
    assert (r ** 4 * s * t) ** 3 == NEG_I
    assert (r ** 5 * t * s) ** 2 == NEG_I
    g = binary_polyhedral("I")
    keys = set()
    for h in range(10):
        keys.add((r ** h).key())
        keys.add((s * r ** h).key())
        for j in range(5):
            keys.add((r ** h * t * r ** j).key())
            keys.add((r ** h * t * s * r ** j).key())
    assert len(keys) == 120
    assert keys == g.element_keys()


def test_su2_membership_by_family():
    for p in range(1, 8):
        assert cyclic_gamma(p, p - 1).is_su2()
        assert binary_dihedral(p).is_su2()
    assert not dihedral(4).is_su2()


def test_conjugate():
    g = cyclic_gamma(3, 2)
    assert conjugate(g, identity()).element_keys() == g.element_keys()
    swapped = conjugate(g, antidiag(1, 1))
    assert swapped.order == 3
    # conjugating by the swap exchanges the diagonal exponents
    assert {(m.a.items, m.d.items) for m in swapped} == {(m.d.items, m.a.items) for m in g}
    u = diag(root_of_unity(8, 1), root_of_unity(8, 7))
    h = conjugate(binary_dihedral(2), u)
    assert h.order == 8
    assert closure(h.elements).order == 8  # still closed
    with pytest.raises(NotUnitary):
        conjugate(g, diag(2, 1))


def test_trivial_group():
    assert trivial_group().order == 1


def test_generator_file_round_trip(tmp_path):
    data = dump_generators([NEG_I], cap=100)
    text = json.dumps(data)
    g = load_generators(text)
    assert g.order == 2
    # through a real file, as the CLI consumes it
    path = tmp_path / "gens.json"
    path.write_text(json.dumps(dump_generators([diag(root_of_unity(4, 1),
                                                     root_of_unity(4, 3))])))
    g2 = load_generators(json.loads(path.read_text()))
    assert g2.order == 4


def test_load_generators_rejects_nonunitary():
    bad = dump_generators([diag(2, 1)])
    with pytest.raises(NotUnitary):
        load_generators(bad)
