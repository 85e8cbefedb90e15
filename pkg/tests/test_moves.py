import math

import numpy as np
import pytest

from ranspace.errors import (
    AmbiguousBranching,
    EndpointMismatch,
    ModeViolation,
    UnsupportedDegree,
)
from ranspace.moves import (
    ContractionCertificate,
    Inclusion,
    SimplyConnected,
    contract_circle_generator,
    contract_pipeline,
    extract_strands,
    normalize,
    pushforward_contraction,
    staircase,
)
from ranspace.ran import configuration, dedup, hausdorff
from ranspace.space import Circle, Interval, MetricGraph
from ranspace.tracks import (
    StrandBundle,
    check_continuity,
    detect_branch_merge,
    make_track,
    project,
    singleton_strand,
    uniform_times,
    winding_number,
)

C1 = Circle(1.0)


def random_based_strand(rng, m, max_wind=2, amp=0.12):
    """Loop strand on the unit circle based at 0, with bounded step size."""
    w = int(rng.integers(-max_wind, max_wind + 1))
    coeffs = rng.uniform(-amp, amp, 3)
    times = uniform_times(m)
    return tuple(
        C1.canon(w * t + sum(a * np.sin(np.pi * (k + 1) * t) for k, a in enumerate(coeffs)))
        for t in times
    )


def generator_track(m=128, base=0.0):
    times = uniform_times(m)
    return make_track(C1, times, [[C1.canon(base + t)] for t in times], cap=1, kind="loop")


def figure_branch_track(m=128):
    """Loop at 0 that splits into a symmetric pair and rejoins."""
    times = uniform_times(m)

    def pts(t):
        if t <= 0.25 or t >= 0.75:
            return [0.0]
        s = 0.4 * min(t - 0.25, 0.75 - t)
        return [C1.canon(s), C1.canon(-s)]

    return make_track(C1, times, [pts(t) for t in times], cap=2, kind="loop")


# -- strand extraction ---------------------------------------------------


def test_extract_projects_back_to_track():
    track = figure_branch_track()
    bundle = extract_strands(track)
    assert project(bundle).configs == track.configs


def test_extract_handles_crossing_strands():
    times = uniform_times(128)
    s1 = tuple(C1.canon(0.1 + 0.3 * t) for t in times)
    s2 = tuple(C1.canon(0.5 - 0.3 * t) for t in times)
    track = project(StrandBundle(C1, times, (s1, s2)))
    bundle = extract_strands(track)
    assert project(bundle).configs == track.configs


def test_extract_rejects_teleport():
    times = uniform_times(64)
    pts = [[0.0] if t < 0.5 else [0.4] for t in times]
    track = make_track(C1, times, pts, cap=1, kind="path")
    with pytest.raises(AmbiguousBranching):
        extract_strands(track, matching_radius=0.01)


# -- normalize ------------------------------------------------------------


def test_normalize_based_bundle_unchanged():
    times = uniform_times(64)
    strands = (tuple(C1.canon(t) for t in times), tuple(0.0 for _ in times))
    bundle = StrandBundle(C1, times, strands)
    out, h = normalize(bundle, 0.0)
    assert out is bundle
    assert h.rows == 2
    assert h.cells[0] == h.cells[-1]


def test_normalize_generator_track():
    track = generator_track(base=0.1)
    bundle, h = normalize(track, 0.0)
    assert bundle.n == 1
    assert bundle.based_at(0.0)
    # |config(0)| = 1 on the projected output
    proj = project(bundle)
    assert len(proj.configs[0]) == 1
    # homotopy runs from the input to the projection
    assert max(hausdorff(C1, a, b) for a, b in zip(h.cells[0], track.configs)) == 0.0
    assert max(hausdorff(C1, a, b) for a, b in zip(h.cells[-1], proj.configs)) == 0.0
    assert winding_number(C1, bundle.strands[0]) == 1


def test_normalize_eliminates_interior_branching():
    track = figure_branch_track()
    bundle, _ = normalize(track, 0.0)
    assert bundle.n == 2
    assert bundle.based_at(0.0)
    proj = project(bundle)
    events = detect_branch_merge(proj, radius=0.02, lookahead=1)
    last = len(proj.times) - 1
    # on a loop the base time is index 0 and index m alike
    interior = [e for e in events if 0 < e[0] < last]
    assert interior == []
    assert any(e[0] in (0, last) for e in events)


def test_normalize_idempotent():
    track = figure_branch_track()
    bundle, _ = normalize(track, 0.0)
    again, h = normalize(bundle, 0.0)
    assert again is bundle
    assert all(row == h.cells[0] for row in h.cells)


def test_normalize_handles_monodromy_swap():
    times = uniform_times(128)
    track = make_track(
        C1, times, [[C1.canon(t / 2), C1.canon(t / 2 + 0.5)] for t in times], cap=2, kind="loop"
    )
    bundle, _ = normalize(track, 0.0)
    assert bundle.based_at(0.0)
    assert sum(winding_number(C1, s) for s in bundle.strands) == 1


def test_normalize_rejects_open_path():
    times = uniform_times(32)
    track = make_track(C1, times, [[C1.canon(0.4 * t)] for t in times], cap=1, kind="path")
    with pytest.raises(EndpointMismatch):
        normalize(track, 0.0)


# -- staircase ------------------------------------------------------------


def test_staircase_single_strand_is_identity():
    times = uniform_times(32)
    bundle = StrandBundle(C1, times, (tuple(C1.canon(t) for t in times),))
    out = staircase(bundle)
    assert out.strands == bundle.strands
    assert out.times == bundle.times


def test_staircase_two_strand_schedule():
    times = uniform_times(64)
    gen = tuple(C1.canon(t) for t in times)
    const = tuple(0.0 for _ in times)
    out = staircase(StrandBundle(C1, times, (gen, const)))
    i = out.times.index(0.25)
    # active strand halfway through its window, the other frozen at base
    assert out.strands[0][i] == pytest.approx(0.5)
    assert out.strands[1][i] == 0.0
    assert project(out).configs[i].points == (0.0, 0.5)


def test_staircase_projection_capped_at_two():
    rng = np.random.default_rng(21)
    for _ in range(10):
        n = int(rng.integers(2, 7))
        strands = tuple(random_based_strand(rng, 128) for _ in range(n))
        out = staircase(StrandBundle(C1, uniform_times(128), strands))
        assert max(len(c) for c in project(out).configs) <= 2


def test_staircase_preserves_strand_images():
    rng = np.random.default_rng(22)
    strands = tuple(random_based_strand(rng, 64) for _ in range(3))
    bundle = StrandBundle(C1, uniform_times(64), strands)
    out = staircase(bundle)
    m = 64
    for j in range(3):
        window = out.strands[j][j * m : (j + 1) * m + 1]
        assert window == strands[j]


def test_staircase_needs_shared_endpoints():
    times = uniform_times(16)
    s1 = tuple(C1.canon(t) for t in times)
    s2 = tuple(C1.canon(0.3) for _ in times)
    with pytest.raises(EndpointMismatch):
        staircase(StrandBundle(C1, times, (s1, s2)))


# -- the one-turn contraction ----------------------------------------------


@pytest.mark.parametrize("turns", [1, -1])
def test_generator_contraction_certificate(turns):
    h = contract_circle_generator(turns, resolution=(64, 128))
    assert winding_number(C1, singleton_strand(h.row(0))) == turns
    base = dedup(C1, [0.0])
    assert max(hausdorff(C1, c, base) for c in h.cells[-1]) <= 1e-9
    cards = [len(c) for row in h.cells for c in row]
    assert max(cards) == 3
    assert all(hausdorff(C1, row[0], base) <= 1e-9 for row in h.cells)
    assert all(hausdorff(C1, row[-1], base) <= 1e-9 for row in h.cells)
    report = check_continuity(h, bound=4.0)
    assert report.passed


def test_generator_contraction_stable_under_refinement():
    lips_a = check_continuity(contract_circle_generator(1, (64, 128)), 4.0).lipschitz
    lips_b = check_continuity(contract_circle_generator(1, (128, 256)), 4.0).lipschitz
    assert lips_b <= 2.0 * lips_a
    assert lips_a <= 2.0 * lips_b


def test_generator_contraction_rejects_other_degrees():
    with pytest.raises(UnsupportedDegree):
        contract_circle_generator(2)
    with pytest.raises(UnsupportedDegree):
        contract_circle_generator(0)


def test_generator_contraction_scales_with_circumference():
    h = contract_circle_generator(1, resolution=(16, 32), space=Circle(2.5))
    assert h.space == Circle(2.5)
    strand = singleton_strand(h.row(0))
    assert winding_number(Circle(2.5), strand) == 1


# -- pushforward ------------------------------------------------------------


def test_pushforward_constant_strand():
    h = pushforward_contraction(C1, [0.3] * 65)
    assert all(c.points == (0.3,) for row in h.cells for c in row)


def test_pushforward_identity_matches_generator():
    strand = [C1.canon(t) for t in uniform_times(128)]
    ph = pushforward_contraction(C1, strand, resolution=(32, 64))
    gh = contract_circle_generator(1, resolution=(32, 64))
    gap = max(
        hausdorff(C1, a, b) for ra, rb in zip(ph.cells, gh.cells) for a, b in zip(ra, rb)
    )
    assert gap <= 1e-12


def test_pushforward_interval_arc_stays_in_image():
    ival = Interval(1.0)
    times = uniform_times(64)
    strand = [0.4 * (1.0 - abs(1.0 - 2.0 * t)) for t in times]
    h = pushforward_contraction(ival, strand, resolution=(16, 32))
    for row in h.cells:
        for cell in row:
            for p in cell.points:
                assert -1e-12 <= p <= 0.4 + 1e-12
    base = dedup(ival, [0.0])
    assert max(hausdorff(ival, c, base) for c in h.cells[-1]) <= 1e-9


def test_pushforward_needs_closed_strand():
    with pytest.raises(EndpointMismatch):
        pushforward_contraction(C1, [C1.canon(0.4 * t) for t in uniform_times(16)])


# -- the pipeline -----------------------------------------------------------


def certificate_ok(cert: ContractionCertificate, cap: int):
    assert cert.max_cardinality <= cap
    assert cert.declared_cap == cap
    assert cert.target_constancy <= 1e-9
    assert math.isfinite(cert.lipschitz)


def test_pipeline_constant_loop():
    times = uniform_times(32)
    track = make_track(C1, times, [[0.0] for _ in times], cap=1, kind="loop")
    h, cert = contract_pipeline(track, Inclusion(1), 0.0, resolution=(24, 32))
    assert cert.max_cardinality == 1
    certificate_ok(cert, 3)


def test_pipeline_generator_inclusion():
    h, cert = contract_pipeline(generator_track(base=0.1), Inclusion(1), 0.0, resolution=(48, 128))
    certificate_ok(cert, 3)
    # every intermediate row closes up
    assert max(hausdorff(C1, row[0], row[-1]) for row in h.cells) <= 1e-9


def test_pipeline_splits_multiturn_strands():
    times = uniform_times(256)
    track = make_track(C1, times, [[C1.canon(2 * t)] for t in times], cap=1, kind="loop")
    h, cert = contract_pipeline(track, Inclusion(1), 0.0, resolution=(48, 128))
    certificate_ok(cert, 3)
    names = [s[0] for s in cert.stages]
    assert names.count("normalize") == 1
    assert sum(1 for n in names if n.startswith("contract-window")) == 2


def test_pipeline_simply_connected_bundle():
    rng = np.random.default_rng(30)
    strands = tuple(random_based_strand(rng, 128, max_wind=1) for _ in range(4))
    bundle = StrandBundle(C1, uniform_times(128), strands)
    h, cert = contract_pipeline(bundle, SimplyConnected(4), 0.0, resolution=(40, 128))
    certificate_ok(cert, 4)


def test_pipeline_theta_graph():
    theta = MetricGraph(2, ((0, 1, 1.0), (0, 1, 1.2), (0, 1, 0.8)))
    b = theta.vertex_point(0)
    times = uniform_times(128)

    def walk(e_out, e_back):
        pts = []
        for t in times:
            if t <= 0.5:
                pts.append(theta.canon((e_out, 2 * t)))
            else:
                pts.append(theta.canon((e_back, 2 * (1 - t))))
        return tuple(pts)

    strands = (walk(0, 1), walk(2, 0), tuple(b for _ in times), tuple(b for _ in times))
    bundle = StrandBundle(theta, times, strands)
    h, cert = contract_pipeline(bundle, SimplyConnected(4), b, resolution=(40, 128))
    certificate_ok(cert, 4)


def test_pipeline_mode_validation():
    with pytest.raises(ValueError):
        SimplyConnected(3)
    track = generator_track()
    with pytest.raises(ValueError):
        contract_pipeline(project(StrandBundle(C1, uniform_times(16), (
            tuple(0.0 for _ in range(17)), tuple(0.1 for _ in range(17))))), Inclusion(1), 0.0)


def test_pipeline_certificate_serializes():
    _, cert = contract_pipeline(generator_track(), Inclusion(1), 0.0, resolution=(24, 64))
    d = cert.as_dict()
    assert d["declared_cap"] == 3
    assert d["stages"][0][0] == "normalize"


def test_pipeline_interval_loops():
    ival = Interval(1.0)
    times = uniform_times(128)

    def arc(peak):
        return tuple(peak * (1.0 - abs(1.0 - 2.0 * t)) for t in times)

    strands = (arc(0.8), arc(0.5), arc(0.3), tuple(0.0 for _ in times))
    bundle = StrandBundle(ival, times, strands)
    h, cert = contract_pipeline(bundle, SimplyConnected(4), 0.0, resolution=(32, 96))
    certificate_ok(cert, 4)
    base = dedup(ival, [0.0])
    assert max(hausdorff(ival, c, base) for c in h.cells[-1]) <= 1e-9


def test_pipeline_bound_stable_under_refinement():
    track = generator_track(m=256, base=0.1)
    _, coarse = contract_pipeline(track, Inclusion(1), 0.0, resolution=(48, 128))
    _, fine = contract_pipeline(track, Inclusion(1), 0.0, resolution=(96, 256))
    assert math.isfinite(coarse.lipschitz) and math.isfinite(fine.lipschitz)
    ratio = fine.lipschitz / coarse.lipschitz
    assert 0.5 <= ratio <= 2.0
