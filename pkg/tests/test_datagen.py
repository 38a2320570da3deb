import numpy as np
import pytest

from listsort.datagen import (
    Pattern,
    generate,
    generate_values,
    mix64,
    parse_pattern,
    splitmix_stream,
    with_seed,
)


def test_worst_interleave_matches_fixed_pattern():
    vals = generate_values(Pattern("worst"), 10)
    assert vals.tolist() == [1, 10, 2, 9, 3, 8, 4, 7, 5, 6]


def test_worst_interleave_odd_puts_middle_last():
    assert generate_values(Pattern("worst"), 5).tolist() == [1, 5, 2, 4, 3]
    assert generate_values(Pattern("worst"), 1).tolist() == [1]


def test_worst_is_permutation_of_1_to_n():
    for n in (2, 7, 100, 1001):
        vals = generate_values(Pattern("worst"), n)
        assert sorted(vals.tolist()) == list(range(1, n + 1))


def test_ascending_descending():
    assert generate_values(Pattern("asc"), 5).tolist() == [1, 2, 3, 4, 5]
    assert generate_values(Pattern("desc"), 5).tolist() == [5, 4, 3, 2, 1]
    asc = generate_values(Pattern("asc"), 300)
    assert (np.diff(asc) > 0).all()
    desc = generate_values(Pattern("desc"), 300)
    assert (np.diff(desc) < 0).all()


def test_random_is_deterministic_per_seed():
    a = generate_values(Pattern("random", seed=7), 64)
    b = generate_values(Pattern("random", seed=7), 64)
    assert np.array_equal(a, b)


def test_random_differs_across_seeds():
    a = generate_values(Pattern("random", seed=1), 8)
    b = generate_values(Pattern("random", seed=2), 8)
    assert not np.array_equal(a, b)


def test_random_range_is_31_bits():
    vals = generate_values(Pattern("random", seed=3), 10000)
    assert vals.min() >= 0
    assert vals.max() < 2**31


def test_splitmix_stream_frozen_vector():
    # regression anchor: the canonical published sequence for seed 0 pins
    # the generator bit-for-bit across platforms
    assert splitmix_stream(0, 3).tolist() == [
        0xE220A8397B1DCDAF,
        0x6E789E6AA1B965F4,
        0x06C45D188009454F,
    ]


def test_mix64_matches_stream():
    # stream output k equals mix64(seed + (k+1) * gamma)
    seed = 42
    stream = splitmix_stream(seed, 4)
    gamma = 0x9E3779B97F4A7C15
    for k in range(4):
        assert int(stream[k]) == mix64((seed + (k + 1) * gamma) & (2**64 - 1))


def test_chunks_alternate_direction_and_overlap():
    p = Pattern("chunks", chunk_len=8, seed=5)
    vals = generate_values(p, 64)
    for j in range(8):
        chunk = vals[j * 8 : (j + 1) * 8]
        diffs = np.diff(chunk)
        assert (diffs == 1).all() if j % 2 == 0 else (diffs == -1).all()
    # bases land in [0, 2^30): far tighter than the 31-bit random range,
    # so chunk value windows overlap across the sequence
    assert vals.min() >= 0
    assert vals.max() < 2**30 + 8


def test_chunks_partial_tail_chunk():
    p = Pattern("chunks", chunk_len=10, seed=1)
    vals = generate_values(p, 25)
    assert vals.size == 25
    tail = vals[20:]
    assert (np.diff(tail) == 1).all()  # third chunk ascends


def test_generate_tags_are_emission_order():
    keys = generate(Pattern("random", seed=11), 50)
    assert [k.tag for k in keys] == list(range(50))


def test_generate_empty():
    assert generate(Pattern("random", seed=1), 0) == []
    assert generate_values(Pattern("chunks", chunk_len=4, seed=1), 0).size == 0


def test_generate_rejects_negative_count():
    with pytest.raises(ValueError):
        generate_values(Pattern("asc"), -1)


@pytest.mark.parametrize(
    "text,kind,chunk_len",
    [
        ("random", "random", 0),
        ("asc", "asc", 0),
        ("desc", "desc", 0),
        ("worst", "worst", 0),
        ("chunks:32", "chunks", 32),
    ],
)
def test_parse_pattern_roundtrip(text, kind, chunk_len):
    p = parse_pattern(text)
    assert p.kind == kind
    assert p.chunk_len == chunk_len
    assert p.name() == text


@pytest.mark.parametrize("text", ["bogo", "chunks", "chunks:", "chunks:x", "chunks:0"])
def test_parse_pattern_rejects_garbage(text):
    with pytest.raises(ValueError):
        parse_pattern(text)


def test_with_seed_replaces_only_seed():
    p = with_seed(parse_pattern("chunks:16"), 99)
    assert p.seed == 99
    assert p.chunk_len == 16


def test_worst_feeds_size_two_runs_into_pool():
    # cross-module property: even-n interleave makes every insertion-seeded
    # run hold exactly two keys whenever a collapse starts
    from listsort import kernels

    for n in (20, 64):
        vals = generate_values(Pattern("worst"), n)
        _, _, c = kernels.sort_arrays("listsort", vals, capacity=5)
        assert c[kernels.C_RUNS] == n // 2
        assert c[kernels.C_PRE_MIN] == 2
        assert c[kernels.C_PRE_MAX] == 2
