import pytest

from gdrazin.errors import CannotIsolateError, InfeasibleConfigurationError
from gdrazin.generator import GenConfig, Instance, generate_instance, perturb_to_violate
from gdrazin.formulas.operator import split
from gdrazin.hypotheses import BLOCK_IDS, HYPOTHESIS_IDS, ROUTE_OF, check_hypothesis, labels
from gdrazin.matrix import Matrix
from gdrazin.oracle import drazin
from gdrazin.scalar import FLOAT

from conftest import M


def test_same_config_same_instance():
    cfg = GenConfig("H22", 2, 7)
    x, y = generate_instance(cfg), generate_instance(cfg)
    assert x.mats == y.mats
    assert x.to_json() == y.to_json()


def test_square_zero_pair_residuals():
    for seed in range(5):
        inst = generate_instance(GenConfig("H27", 2, seed))
        rep = check_hypothesis("H27", *inst.mats)
        assert rep.residuals == (0.0, 0.0)


def test_h41_scalar_blocks():
    for seed in range(10):
        A, B, C, D = generate_instance(GenConfig("H41", 1, seed)).mats
        assert (D @ C @ A).is_zero() and (D @ C @ B).is_zero()


@pytest.mark.parametrize("hid", HYPOTHESIS_IDS)
@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_soundness(hid, n):
    for seed in range(3):
        inst = generate_instance(GenConfig(hid, n, seed * 7919 + n))
        assert check_hypothesis(hid, *inst.mats).satisfied
        assert all(m.shape == (n, n) for m in inst.mats)


def test_trial_seeds_are_xor():
    cfg = GenConfig("H22", 2, 0b1010)
    assert cfg.trial(3).seed == 0b1001
    assert GenConfig("H22", 2, -1).trial(0).seed == (1 << 64) - 1


def test_manifest():
    inst = generate_instance(GenConfig("H41", 2, 3))
    man = inst.manifest()
    assert man["id"] == "H41" and man["seed"] == 3 and man["recipe"]
    assert set(man["matrices"]) == {"A", "B", "C", "D"}


def test_float_mode():
    inst = generate_instance(GenConfig("H22", 3, 1, mode=FLOAT))
    assert all(m.mode == FLOAT for m in inst.mats)
    assert check_hypothesis("H22", *inst.mats).satisfied


@pytest.mark.parametrize("cfg", [GenConfig("H22", 0), GenConfig("H99", 2),
                                 GenConfig("H22", 2, pool=0), GenConfig("H22", 99)])
def test_infeasible(cfg):
    with pytest.raises(InfeasibleConfigurationError):
        generate_instance(cfg)


def test_violate_square_zero_condition():
    found = 0
    for seed in range(10):
        inst = generate_instance(GenConfig("H27", 3, seed))
        try:
            out = perturb_to_violate(inst, "H27", 1, seed)
        except CannotIsolateError:
            continue
        rep = check_hypothesis("H27", *out.mats)
        assert rep.residuals[0] > 0 and rep.violated == (1,)
        found += 1
    assert found > 0


def test_zero_instance_cannot_isolate():
    for w in (1, 2):
        with pytest.raises(CannotIsolateError):
            perturb_to_violate((Matrix.zeros(1), Matrix.zeros(1)), "H27", w, 0)


def test_invertible_scalar_b_cannot_isolate():
    with pytest.raises(CannotIsolateError):
        perturb_to_violate((M([[2]]), M([[1]])), "H22", 1, 0)


def test_violate_bad_index():
    inst = generate_instance(GenConfig("H22", 2, 0))
    with pytest.raises(ValueError):
        perturb_to_violate(inst, "H22", 2, 0)


@pytest.mark.parametrize("hid", HYPOTHESIS_IDS)
def test_violation_targets_chosen_condition(hid):
    hits = 0
    for seed in range(6):
        inst = generate_instance(GenConfig(hid, 3, seed))
        which = 1 + seed % len(labels(hid))
        try:
            out = perturb_to_violate(inst, hid, which, seed)
        except CannotIsolateError:
            continue
        assert isinstance(out, Instance)
        assert check_hypothesis(hid, *out.mats).violated == (which,)
        hits += 1
    assert hits > 0


@pytest.mark.parametrize("hid", HYPOTHESIS_IDS)
def test_non_triviality_quota(hid):
    # pair ids: a, b and b^pi; block ids: the route's split P, Q and (BC)^pi
    both = proj = 0
    for i in range(200):
        inst = generate_instance(GenConfig(hid, 2 + i % 3, 4242).trial(i))
        if hid in BLOCK_IDS:
            A, B, C, D = inst.mats
            x, y = split(A, B, C, D, ROUTE_OF[hid])
            pi = drazin(B @ C).projector
        else:
            x, y = inst.mats
            pi = drazin(y).projector
        both += not x.is_zero() and not y.is_zero()
        proj += not pi.is_zero()
    assert both >= 100 and proj >= 50, (both, proj)
