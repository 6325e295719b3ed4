import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bcpath.dubins import DubinsWord, candidate_set
from bcpath.geometry import Configuration, Turn, canonical_instance, dist, wrap_angle
from bcpath.homotopy import (
    FreeCertificate,
    InfeasibleGradient,
    NoFreeCandidate,
    NoParallelTangents,
    PlanBranch,
    TargetTooShort,
    candidate_verdicts,
    classify_homotopy,
    cross_section_band,
    extend_path,
    free_certificate,
    gradient_feasibility,
    loop_augmented,
    plan_min_length,
    required_planar_length,
    verify_certificate,
)
from bcpath.path import CurvaturePath, find_parallel_tangents, path_diameter, self_intersections, validate_path
from bcpath.region import construct_region, region_diameter
from bcpath.sampling import random_canonical_instance
from bcpath.segments import Arc, Line

from oracles import integrate_lift, lift_required_length


@pytest.fixture(scope="module")
def canonical():
    return canonical_instance(Configuration.from_angle(2.0, 0.0, 0.0))


@pytest.fixture(scope="module")
def half_turn():
    inst = canonical_instance(Configuration.from_angle(0.0, 2.0, math.pi))
    return inst, CurvaturePath((Arc.from_start((0.0, 0.0), 0.0, Turn.LEFT, math.pi),))


def _same_ends(a, b, tol=1e-9):
    return (dist(a.start_point, b.start_point) <= tol and dist(a.end_point, b.end_point) <= tol
            and abs(wrap_angle(a.start_heading - b.start_heading)) <= tol
            and abs(wrap_angle(a.end_heading - b.end_heading)) <= tol)


# -- certificates

def test_long_arc_certificate(half_turn):
    inst, path = half_turn
    cert = free_certificate(inst, path)
    assert cert.kind == "LongArc" and cert.segment_index == 0
    assert verify_certificate(inst, path, cert)
    assert cert.describe() == "LongArc(segment=0)"


def test_straight_segment_has_no_certificate(canonical):
    assert free_certificate(canonical, CurvaturePath((Line((0, 0), (2, 0)),))) is None


def test_self_crossing_certificate():
    # two sub-half-turn arcs on different circles, then a straight back across the first leg
    a = Arc.from_start((0.0, 0.0), 0.0, Turn.LEFT, 0.9 * math.pi, radius=2.0)
    b = Arc.from_start(a.end_point, a.end_heading, Turn.LEFT, 0.9 * math.pi)
    h = b.end_heading
    tail = Line(b.end_point, (b.end_point[0] + 6.0 * math.cos(h), b.end_point[1] + 6.0 * math.sin(h)))
    path = CurvaturePath((a, b, tail))
    inst = canonical_instance(path.end_configuration)
    crossing = self_intersections(path)
    assert len(crossing) == 1
    s1, s2, p = crossing[0]
    cert = FreeCertificate("SelfIntersection", s1=s1, s2=s2, points=(p,))
    assert verify_certificate(inst, path, cert)
    assert validate_path(path, inst).valid
    # a closing loop turns through more than a half turn, so parallel tangents are found first
    assert free_certificate(inst, path).kind == "ParallelTangents"
    assert classify_homotopy(inst, path).kind == "Free"


def test_endpoint_in_disk_certificate():
    # y inside the disk of the left adjacent circle of x, reached by a short gentle arc
    inst = canonical_instance(Configuration.from_angle(0.3, 0.6, 2.0))
    path = CurvaturePath((Line((0, 0), (0.1, 0)),))
    cert = free_certificate(inst, path)
    assert cert.kind == "EndpointInsideAdjacentDisk"
    assert verify_certificate(inst, path, cert)


def test_certificate_order_prefers_long_arc(half_turn):
    inst, path = half_turn
    assert find_parallel_tangents(path) is not None
    assert free_certificate(inst, path).kind == "LongArc"


def test_verify_rejects_forged_certificates(half_turn, canonical):
    inst, path = half_turn
    straight = CurvaturePath((Line((0, 0), (2, 0)),))
    assert not verify_certificate(canonical, straight, FreeCertificate("LongArc", segment_index=0))
    assert not verify_certificate(canonical, straight, FreeCertificate("ParallelTangents", s1=0.0, s2=1.0))
    assert not verify_certificate(canonical, straight, FreeCertificate("SelfIntersection", s1=0.0, s2=1.0))
    assert not verify_certificate(canonical, straight, FreeCertificate("EndpointInsideAdjacentDisk"))
    assert not verify_certificate(canonical, straight, FreeCertificate("Unknown"))


def test_cross_section_band_detects_over_arc_point():
    # ends on a horizontal chord of the unit circle centered below; the path bulges above the circle
    p, q = (-0.8, 0.0), (0.8, 0.0)
    up = CurvaturePath((Line(p, (-0.8, 1.0)), Line((-0.8, 1.0), (0.8, 1.0)), Line((0.8, 1.0), q)))
    cert = cross_section_band(up)
    assert cert is not None and cert.kind == "CrossSectionBand"
    assert cert.points[:2] == (p, q)
    flat = CurvaturePath((Line(p, q),))
    assert cross_section_band(flat) is None
    far = CurvaturePath((Line((-3.0, 0.0), (3.0, 0.0)),))
    assert cross_section_band(far) is None


# -- verdicts

def test_canonical_verdicts(canonical):
    straight = CurvaturePath((Line((0, 0), (2, 0)),))
    v = classify_homotopy(canonical, straight)
    assert v.kind == "TrappedInOmega" and v.region is not None
    lrl = candidate_set(canonical).by_word(DubinsWord.LRL).path
    v = classify_homotopy(canonical, lrl)
    assert v.kind == "Free" and v.certificate.kind == "LongArc" and v.certificate.segment_index == 1
    assert v.describe() == "Free[LongArc(segment=1)]"


def test_half_turn_instance_is_free(half_turn):
    inst, path = half_turn
    assert classify_homotopy(inst, path).kind == "Free"


def test_far_instance_is_unresolved():
    inst = canonical_instance(Configuration.from_angle(5.0, 0.0, 0.0))
    v = classify_homotopy(inst, CurvaturePath((Line((0, 0), (5, 0)),)))
    assert v.kind == "Unresolved" and "class A" in v.reason


def test_outside_path_without_certificate_is_unresolved(canonical):
    # a gentle S through the area above the region; no long arc, no parallel tangents
    a = Arc.from_start((0.0, 0.0), 0.0, Turn.LEFT, 0.6)
    b = Arc.from_start(a.end_point, a.end_heading, Turn.RIGHT, 1.2)
    c = Arc.from_start(b.end_point, b.end_heading, Turn.LEFT, 0.6)
    path = CurvaturePath((a, b, c))
    inst = canonical_instance(path.end_configuration)
    v = classify_homotopy(inst, path)
    assert v.kind in ("Unresolved", "TrappedInOmega")
    if v.kind == "Unresolved":
        assert v.reason


@settings(max_examples=40)
@given(st.integers(0, 10_000))
def test_trapped_never_has_a_certificate(seed):
    rng = np.random.default_rng(seed)
    inst = random_canonical_instance(rng, reach=3.0)
    region = construct_region(inst)
    for cv in candidate_verdicts(inst, candidate_set(inst)):
        if cv.verdict.kind != "TrappedInOmega":
            continue
        path = candidate_set(inst).by_word(cv.word).path
        assert find_parallel_tangents(path) is None
        assert self_intersections(path) == []
        assert free_certificate(inst, path) is None
        assert path_diameter(path) <= region_diameter(region).value + 1e-9 < 4.0 + 1e-9


def test_trapped_is_stable_under_small_joint_moves():
    # moving y by 1e-7 moves the joints of the same word by about as much
    rng = np.random.default_rng(5)
    checked = 0
    for _ in range(400):
        inst = random_canonical_instance(rng, reach=3.0)
        for cv in candidate_verdicts(inst, candidate_set(inst)):
            if cv.verdict.kind != "TrappedInOmega":
                continue
            base = candidate_set(inst).by_word(cv.word).path
            y = inst.y
            moved = Configuration.from_angle(y.position[0] + rng.uniform(-1e-7, 1e-7),
                                             y.position[1] + rng.uniform(-1e-7, 1e-7),
                                             y.angle + rng.uniform(-1e-7, 1e-7))
            inst2 = canonical_instance(moved)
            near = candidate_set(inst2).by_word(cv.word)
            if near is None or len(near.path.segments) != len(base.segments):
                continue
            joints = [(u.end_point, v.end_point) for u, v in zip(base.segments, near.path.segments)]
            if max(dist(p, q) for p, q in joints) > 1e-6:
                continue
            assert validate_path(near.path, inst2).valid
            assert classify_homotopy(inst2, near.path).kind != "Free"
            checked += 1
    assert checked > 20


# -- extension

def test_extend_half_turn_by_two(half_turn):
    inst, path = half_turn
    ext, fam = extend_path(path, math.pi + 2.0)
    assert ext.total_length == pytest.approx(math.pi + 2.0, abs=1e-12)
    assert fam.r_max == pytest.approx(1.0, abs=1e-12)
    kinds = [type(s).__name__ for s in ext.segments]
    assert kinds.count("Line") == 2
    assert validate_path(ext, inst).valid
    assert _same_ends(ext, path)


def test_extend_to_current_length_is_identity(half_turn):
    inst, path = half_turn
    ext, fam = extend_path(path, path.total_length)
    assert ext is path and fam.r_max == 0.0


def test_extend_errors(half_turn):
    _, path = half_turn
    with pytest.raises(NoParallelTangents):
        extend_path(CurvaturePath((Line((0, 0), (2, 0)),)), 5.0)
    with pytest.raises(TargetTooShort):
        extend_path(path, 1.0)


def test_family_sweep_is_exact(half_turn):
    inst, path = half_turn
    _, fam = extend_path(path, math.pi + 7.0)
    for r, member in fam.sweep(100):
        assert member.total_length == pytest.approx(fam.length(r), abs=1e-9)
        assert fam.length(r) == fam.base_length + 2.0 * r
        assert validate_path(member, inst).valid
        assert _same_ends(member, path)
    with pytest.raises(ValueError):
        fam.member(fam.r_max + 1.0)


def test_lrl_extension_keeps_endpoints(canonical):
    lrl = candidate_set(canonical).by_word(DubinsWord.LRL).path
    ext, fam = extend_path(lrl, lrl.total_length + 3.0)
    assert ext.total_length == pytest.approx(lrl.total_length + 3.0, abs=1e-9)
    assert validate_path(ext, canonical).valid


# -- planning

def test_plan_short_requirement_needs_no_extension(canonical):
    plan = plan_min_length(canonical, 1.5)
    assert plan.branch is PlanBranch.NO_EXTENSION_NEEDED
    assert plan.length == pytest.approx(2.0, abs=1e-12) and plan.exact


def test_plan_canonical_ten(canonical):
    plan = plan_min_length(canonical, 10.0)
    assert plan.length == pytest.approx(10.0, abs=1e-9)
    assert validate_path(plan.path, canonical).valid
    assert classify_homotopy(canonical, plan.path).kind == "Free"
    # the CCC candidates are longer than 10, so the free path comes from the looped shortest path
    assert plan.branch is PlanBranch.LOOP_AUGMENTED
    kinds = {v.word: v.verdict.kind for v in plan.verdicts}
    assert kinds[DubinsWord.LRL] == kinds[DubinsWord.RLR] == "Free"
    assert kinds[DubinsWord.LSL] == "TrappedInOmega"


def test_plan_without_augmentation_overshoots(canonical):
    plan = plan_min_length(canonical, 10.0, augment=False)
    assert plan.branch is PlanBranch.FREE_CANDIDATE_EXCEEDS
    assert plan.word in (DubinsWord.LRL, DubinsWord.RLR)
    assert not plan.exact and plan.length == pytest.approx(10 * math.pi / 3, abs=1e-9)


def test_plan_canonical_long_requirement_extends_ccc(canonical):
    plan = plan_min_length(canonical, 12.0)
    assert plan.branch is PlanBranch.EXTEND_FREE_CANDIDATE
    assert plan.word in (DubinsWord.LRL, DubinsWord.RLR)
    assert plan.length == pytest.approx(12.0, abs=1e-9)
    assert validate_path(plan.path, canonical).valid


def test_plan_far_instance():
    inst = canonical_instance(Configuration.from_angle(5.0, 0.0, 0.0))
    plan = plan_min_length(inst, 20.0)
    assert plan.length == pytest.approx(20.0, abs=1e-9)
    assert validate_path(plan.path, inst).valid


def test_plan_extends_free_shortest(half_turn):
    inst, _ = half_turn
    plan = plan_min_length(inst, 9.0)
    assert plan.branch is PlanBranch.EXTEND_SHORTEST
    assert plan.length == pytest.approx(9.0, abs=1e-9)


def test_plan_fails_loudly_without_free_candidate(canonical):
    far = canonical_instance(Configuration.from_angle(5.0, 0.0, 0.0))
    with pytest.raises(NoFreeCandidate):
        plan_min_length(far, 20.0, augment=False)
    with pytest.raises(ValueError):
        plan_min_length(canonical, -1.0)


def test_loop_augmented_keeps_endpoints(canonical):
    straight = CurvaturePath((Line((0, 0), (2, 0)),))
    looped = loop_augmented(canonical, straight)
    assert looped.total_length == pytest.approx(2.0 + 2 * math.pi, abs=1e-12)
    assert _same_ends(looped, straight)


@settings(max_examples=60)
@given(st.integers(0, 100_000), st.floats(0.0, 40.0))
def test_plan_length_law(seed, required):
    inst = random_canonical_instance(np.random.default_rng(seed), reach=6.0)
    try:
        plan = plan_min_length(inst, required)
    except NoFreeCandidate:
        return
    shortest = candidate_set(inst).shortest.length
    if plan.exact:
        assert plan.length == pytest.approx(max(shortest, required), abs=1e-9)
    assert validate_path(plan.path, inst).valid


# -- gradient

def test_gradient_examples():
    rep = gradient_feasibility(70.0, 1 / 7, 500.0)
    assert rep.required_planar_length == 490.0 and rep.feasible
    assert gradient_feasibility(0.0, 0.1, 3.0).required_planar_length == 0.0
    rep = gradient_feasibility(70.0, 1 / 7, 480.0)
    assert not rep.feasible and rep.shortfall == pytest.approx(10.0, abs=1e-12)


def test_gradient_against_lift_integrator():
    need = lift_required_length(70.0, 1 / 7)
    assert need == pytest.approx(required_planar_length(70.0, 1 / 7), abs=1e-6)
    pts = np.column_stack([np.linspace(0, 490.0, 4901), np.zeros(4901)])
    assert integrate_lift(pts, 1 / 7) == pytest.approx(70.0, abs=1e-6)


def test_gradient_rejects_bad_ratio():
    for g in (0.0, -0.1, math.inf):
        with pytest.raises(InfeasibleGradient):
            required_planar_length(10.0, g)
