"""Partition enumeration, symmetry factors, and the regrouping sign."""

import random
from fractions import Fraction
from math import factorial

import pytest

from pdc.partitions import koszul_sign, partitions_of, set_partitions, zaut


def euler_partition_counts(n_max):
    """p(0..n_max) via the pentagonal-number recurrence."""
    p = [1] + [0] * n_max
    for n in range(1, n_max + 1):
        total, k = 0, 1
        while True:
            for g in (k * (3 * k - 1) // 2, k * (3 * k + 1) // 2):
                if g > n:
                    break
                total += (-1) ** (k + 1) * p[n - g]
            if k * (3 * k - 1) // 2 > n:
                break
            k += 1
        p[n] = total
    return p


class TestIntegerPartitions:
    def test_counts_match_pentagonal_recurrence(self):
        expect = euler_partition_counts(20)
        for n in range(21):
            assert len(partitions_of(n)) == expect[n]

    def test_shape_and_order(self):
        assert partitions_of(0) == [()]
        assert partitions_of(4) == [(4,), (3, 1), (2, 2), (2, 1, 1),
                                    (1, 1, 1, 1)]
        for mu in partitions_of(9):
            assert sum(mu) == 9
            assert all(mu[i] >= mu[i + 1] for i in range(len(mu) - 1))

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            partitions_of(-1)

    def test_zaut_values(self):
        assert zaut(()) == 1
        assert zaut((3,)) == 3
        assert zaut((2, 2)) == 8            # 2*2 * 2!
        assert zaut((3, 1, 1)) == 6         # 3*1*1 * 2!
        assert zaut((1,) * 5) == factorial(5)

    def test_zaut_reciprocals_sum_to_one(self):
        # sum over partitions of n of 1/zaut equals 1 (conjugacy classes
        # of the symmetric group partition the group)
        for n in range(1, 12):
            assert sum(Fraction(1) / zaut(mu)
                       for mu in partitions_of(n)) == 1

    def test_zaut_rejects_bad_parts(self):
        with pytest.raises(ValueError):
            zaut((2, 0))


class TestSetPartitions:
    def test_counts_are_bell_numbers(self):
        # Bell triangle
        bell = [1]
        row = [1]
        for _ in range(7):
            new = [row[-1]]
            for x in row:
                new.append(new[-1] + x)
            row = new
            bell.append(row[0])
        for l in range(8):
            assert len(set_partitions(l)) == bell[l]

    def test_canonical_block_order(self):
        for p in set_partitions(5):
            flat = sorted(e for block in p for e in block)
            assert flat == [1, 2, 3, 4, 5]
            for block in p:
                assert block == sorted(block)
            mins = [block[0] for block in p]
            assert mins == sorted(mins)

    def test_no_duplicates(self):
        seen = {tuple(tuple(b) for b in p) for p in set_partitions(6)}
        assert len(seen) == len(set_partitions(6))

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            set_partitions(-2)


def brute_sign(blocks, degrees):
    """Move elements one adjacent swap at a time, counting odd-odd swaps."""
    sequence = [e for block in blocks for e in block]
    sign = 1
    work = list(sequence)
    # bubble sort back to identity; each adjacent transposition of two
    # odd-degree elements flips the sign
    for i in range(len(work)):
        for j in range(len(work) - 1 - i):
            if work[j] > work[j + 1]:
                if degrees[work[j] - 1] % 2 and degrees[work[j + 1] - 1] % 2:
                    sign = -sign
                work[j], work[j + 1] = work[j + 1], work[j]
    return sign


class TestKoszulSign:
    def test_even_degrees_always_positive(self):
        for p in set_partitions(4):
            assert koszul_sign(p, [2, 4, 0, 6]) == 1

    def test_matches_adjacent_swap_oracle(self):
        rng = random.Random(30)
        for _ in range(200):
            l = rng.randint(1, 6)
            p = rng.choice(set_partitions(l))
            rng.shuffle(p)
            degrees = [rng.randint(0, 5) for _ in range(l)]
            assert koszul_sign(p, degrees) == brute_sign(p, degrees)

    def test_swapping_adjacent_blocks(self):
        # transposing neighbouring blocks contributes
        # (-1)^(odd count in A)*(odd count in B)
        degrees = [1, 1, 2, 1]
        a = koszul_sign([[1, 2], [3, 4]], degrees)
        b = koszul_sign([[3, 4], [1, 2]], degrees)
        odd_a = 2  # elements 1, 2
        odd_b = 1  # element 4
        assert b == a * (-1) ** (odd_a * odd_b)

    def test_identity_grouping(self):
        assert koszul_sign([[1], [2], [3]], [1, 1, 1]) == 1
        assert koszul_sign([[1, 2, 3]], [1, 1, 1]) == 1
