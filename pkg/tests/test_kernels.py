"""The compiled kernels must agree with the reference implementations exactly."""

import numpy as np
import pytest

from conftest import keys_of, random_values
from listsort import kernels
from listsort.core import verify_sorted_arrays
from listsort.datagen import generate_values, mix64, parse_pattern
from listsort.listsort import list_sort


def kernel_listsort(vals, capacity, optimize=True):
    return kernels.sort_arrays("listsort", vals, capacity=capacity, optimize=optimize)


def test_listsort_kernel_matches_reference_exactly():
    # values, tags, and every counter, across capacities and both merge
    # directions, over mixed duplicate densities
    for case in range(120):
        h = mix64(case + 1)
        n = h % 220
        span = 8 if case % 3 == 0 else 10**6
        vals = random_values(h, n, span=span)
        for capacity in (2, 3, 7, 15):
            for optimize in (True, False):
                ref_out, ref_m = list_sort(
                    keys_of(vals), capacity_override=capacity, optimize=optimize
                )
                out_v, out_t, c = kernel_listsort(vals, capacity, optimize)
                assert out_v.tolist() == [k.value for k in ref_out]
                assert out_t.tolist() == [k.tag for k in ref_out]
                assert c[kernels.C_CMP] == ref_m.comparisons
                assert c[kernels.C_RELINK] == ref_m.relinks
                assert c[kernels.C_RUNS] == ref_m.runs_created
                assert c[kernels.C_MERGES] == ref_m.merges
                assert c[kernels.C_CAP] == capacity


def test_listsort_kernel_premerge_lengths_match_reference_hook():
    vals = generate_values(parse_pattern("worst"), 60)
    seen = []
    list_sort(
        keys_of(vals),
        capacity_override=5,
        on_merge=lambda pool: seen.extend(
            r.length for r in pool.runs if not r.from_merge
        ),
    )
    _, _, c = kernel_listsort(vals, 5)
    assert c[kernels.C_PRE_MIN] == min(seen)
    assert c[kernels.C_PRE_MAX] == max(seen)


def test_listsort_kernel_premerge_sentinel_when_no_merge():
    vals = np.arange(100, dtype=np.int64)
    _, _, c = kernel_listsort(vals, 15)
    assert c[kernels.C_MERGES] == 0
    assert c[kernels.C_PRE_MIN] == kernels.NO_MERGE_SENTINEL
    assert c[kernels.C_PRE_MAX] == 0


@pytest.mark.parametrize("algo", kernels.ALGORITHMS)
@pytest.mark.parametrize("n", [0, 1, 2, 3, 64, 257])
def test_kernels_sort_and_verify(algo, n):
    vals = random_values(n + 17, n, span=max(n, 1))
    out_v, out_t, _ = kernels.sort_arrays(algo, vals)
    assert verify_sorted_arrays(vals, out_v, out_t)
    assert np.array_equal(out_v, np.sort(vals))


@pytest.mark.parametrize("algo", kernels.STABLE_ALGORITHMS)
def test_stable_kernels_match_stable_oracle_tags(algo):
    for seed in range(8):
        vals = random_values(seed, 173, span=9)
        out_v, out_t, _ = kernels.sort_arrays(algo, vals)
        assert np.array_equal(out_t, np.argsort(vals, kind="stable"))


def test_packed_and_generic_arenas_agree():
    # adding a constant to every key preserves each comparison outcome, so
    # the int32 packed arena and the wide generic arena must agree on the
    # output order and on every counter
    for case in range(40):
        h = mix64(case + 31)
        n = h % 300
        narrow = random_values(h, n, span=2**31)
        if case % 2:
            narrow = narrow - 2**30  # negatives stay within int32
        wide = narrow + 2**40
        for capacity in (2, 5, 15):
            nv, nt, nc = kernel_listsort(narrow, capacity)
            wv, wt, wc = kernel_listsort(wide, capacity)
            assert np.array_equal(nt, wt)
            assert np.array_equal(nv + 2**40, wv)
            assert np.array_equal(nc, wc)


def test_packed_arena_covers_int32_boundary_values():
    vals = np.array(
        [2**31 - 1, -(2**31), 0, -1, 2**31 - 1, 17, -(2**31), 2**31 - 1],
        dtype=np.int64,
    )
    out_v, out_t, _ = kernel_listsort(vals, 3)
    assert np.array_equal(out_v, np.sort(vals))
    assert np.array_equal(out_t, np.argsort(vals, kind="stable"))


@pytest.mark.parametrize("algo", kernels.ALGORITHMS)
def test_kernels_handle_int64_extremes(algo):
    vals = np.array(
        [2**63 - 1, -(2**63), 0, -1, 2**63 - 1, 17, -(2**63)], dtype=np.int64
    )
    out_v, out_t, _ = kernels.sort_arrays(algo, vals)
    assert verify_sorted_arrays(vals, out_v, out_t)
    assert np.array_equal(out_v, np.sort(vals))


def test_kernels_do_not_mutate_inputs():
    vals = random_values(5, 200)
    tags = np.arange(200, dtype=np.int64)
    vals_copy = vals.copy()
    for algo in kernels.ALGORITHMS:
        kernels.sort_arrays(algo, vals, tags)
        assert np.array_equal(vals, vals_copy)
        assert np.array_equal(tags, np.arange(200, dtype=np.int64))


def test_timed_sort_reports_elapsed():
    vals = random_values(11, 5000)
    out_v, out_t, counters, elapsed = kernels.timed_sort("listsort", vals)
    assert elapsed > 0
    assert verify_sorted_arrays(vals, out_v, out_t)


def test_unknown_algorithm_rejected():
    with pytest.raises(ValueError):
        kernels.sort_arrays("bogo", np.arange(4, dtype=np.int64))


def test_mismatched_tag_length_rejected():
    with pytest.raises(ValueError):
        kernels.sort_arrays(
            "quick", np.arange(4, dtype=np.int64), np.arange(3, dtype=np.int64)
        )


def test_listsort_kernel_rejects_capacity_below_two():
    with pytest.raises(ValueError):
        kernels.sort_arrays("listsort", np.arange(4, dtype=np.int64), capacity=1)
