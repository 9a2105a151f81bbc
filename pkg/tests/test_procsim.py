from fractions import Fraction

import numpy as np
import pytest

from circlesys.errors import ConstraintError, InputError, ResourceError
from circlesys.procsim import (GridPermutation, build_process,
                               check_requirements, compose_stage, eps_approx,
                               h_from_words, initial_process, rotation_perm)
from circlesys.ratarith import derive_params

DESK = derive_params([2, 2], [4, 4], [2, 2, 4])
W1 = [(0, 1), (1, 0)]
W2_DUP = [(0, 1), (1, 0), (0, 1), (1, 0)]
VAR = derive_params([2, 4], [4, 4], [2, 2, 4])
W2_VAR = [(0, 0, 1, 1), (0, 1, 0, 1), (1, 0, 1, 0), (1, 1, 0, 0)]


def desk_procs():
    p0 = initial_process(DESK)
    h1 = h_from_words(DESK, 0, W1)
    p1 = compose_stage(p0, h1)
    h2 = h_from_words(DESK, 1, W2_DUP)
    p2 = compose_stage(p1, h2)
    return p0, p1, p2, h1, h2


def test_grid_sizes():
    _, p1, p2, _, _ = desk_procs()
    assert (p1.cols, p1.rows, p1.atoms) == (8, 2, 16)
    assert (p2.cols, p2.rows, p2.atoms) == (512, 4, 2048)


def test_towers_partition():
    for proc in desk_procs()[:3]:
        towers = proc.towers()
        assert len(towers) == DESK.s[proc.stage]
        atoms = np.concatenate(towers)
        assert len(atoms) == proc.atoms
        assert sorted(atoms.tolist()) == list(range(proc.atoms))
        for t in towers:
            assert len(t) == DESK.q[proc.stage]


def test_h_commutes_with_previous_rotation():
    _, _, _, h1, h2 = desk_procs()
    for n, h in ((0, h1), (1, h2)):
        rot = rotation_perm(DESK, n, h.cols, h.rows)
        assert h.compose(rot) == rot.compose(h)


def test_transform_is_conjugated_rotation():
    _, p1, _, _, _ = desk_procs()
    T = p1.transform()
    rot = p1.rotation()
    Zinv = p1.Z.inverse()
    assert T == p1.Z.compose(rot).compose(Zinv)


def test_lift_is_rigid():
    _, p1, _, h1, _ = desk_procs()
    lifted = h1.lift(8, 2)
    # block refinement: images of the 4 sub-columns of a cell stay together
    for src in range(h1.atoms if hasattr(h1, "atoms") else h1.cols * h1.rows):
        base = int(h1.table[src])
        st, ss = src % h1.cols, src // h1.cols
        bt, bs = base % h1.cols, base // h1.cols
        for off in range(4):
            fine_src = ss * 8 + st * 4 + off
            fine_dst = int(lifted.table[fine_src])
            assert fine_dst == bs * 8 + bt * 4 + off


def test_h_from_words_validation():
    with pytest.raises(ConstraintError):
        h_from_words(DESK, 0, [(0, 0), (1, 0)])   # symbol 0 used 3 times
    with pytest.raises(InputError):
        h_from_words(DESK, 0, [(0, 1)])           # needs s_1 = 2 words


def test_atom_cap():
    with pytest.raises(ResourceError):
        build_process(DESK, [W1, W2_DUP], cap_atoms=100)


def test_eps_approx_desk():
    _, p1, p2, _, _ = desk_procs()
    rep = eps_approx(p1, p2)
    assert rep.eps == Fraction(1, 4)
    assert rep.deleted == 512
    assert rep.blocks == 192
    assert rep.subordinate
    assert rep.levels_equal


def test_requirements_desk_duplicate():
    rep = check_requirements(DESK, [W1, W2_DUP])
    assert rep.req1 != "fail"
    assert rep.req2
    assert not rep.req3
    assert rep.req3_witness is not None


def test_requirements_variant_all_pass():
    rep = check_requirements(VAR, [W1, W2_VAR])
    assert rep.req1 != "fail"
    assert rep.req2
    assert rep.req3


def test_permutation_identity_inverse():
    g = GridPermutation.identity(8, 2)
    h = h_from_words(DESK, 0, W1).lift(8, 2)
    assert h.compose(h.inverse()) == g
    assert h.inverse().compose(h) == g
    assert h.is_permutation()
