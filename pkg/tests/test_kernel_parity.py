"""Backend parity: the compiled kernel must match the pure one bit for bit."""

import random

import pytest

from hyparr._kernel import pyimpl
from hyparr.cyclo import field_context

try:
    from hyparr._kernel import _speedups
except ImportError:
    _speedups = None

needs_compiled = pytest.mark.skipif(_speedups is None,
                                    reason="compiled kernel not built")

ORDERS = [1, 3, 4, 5, 12]


def random_elem(rng, d):
    return (tuple(rng.randint(-9, 9) for _ in range(d)), rng.randint(1, 6))


def random_rows(rng, m, d, nrows):
    return [(tuple(rng.randint(-5, 5) for _ in range(m * d)), rng.randint(1, 4))
            for _ in range(nrows)]


@needs_compiled
class TestParity:
    def test_elem_ops(self):
        rng = random.Random(1)
        for _ in range(400):
            order = rng.choice(ORDERS)
            ctx = field_context(order)
            a = pyimpl.elem_norm(*random_elem(rng, ctx.degree))
            b = pyimpl.elem_norm(*random_elem(rng, ctx.degree))
            assert _speedups.elem_add(a, b) == pyimpl.elem_add(a, b)
            assert _speedups.elem_sub(a, b) == pyimpl.elem_sub(a, b)
            assert _speedups.elem_mul(a, b, ctx.degree, ctx.red) == \
                pyimpl.elem_mul(a, b, ctx.degree, ctx.red)
            if any(a[0]):
                assert _speedups.elem_inv(a, ctx.degree, ctx.phi, ctx.red) == \
                    pyimpl.elem_inv(a, ctx.degree, ctx.phi, ctx.red)

    def test_norms(self):
        rng = random.Random(2)
        for _ in range(200):
            n = rng.randint(1, 8)
            nums = [rng.randint(-20, 20) * rng.choice([1, 2, 6]) for _ in range(n)]
            den = rng.randint(1, 30) * rng.choice([1, -1])
            assert _speedups.elem_norm(list(nums), den) == \
                pyimpl.elem_norm(list(nums), den)
            assert _speedups.row_norm(list(nums), den) == \
                pyimpl.row_norm(list(nums), den)

    def test_rref_rank_nullspace(self):
        rng = random.Random(3)
        for _ in range(250):
            order = rng.choice(ORDERS)
            ctx = field_context(order)
            m = rng.randint(1, 5)
            rows = random_rows(rng, m, ctx.degree, rng.randint(1, 5))
            fast = _speedups.rref(list(rows), m, ctx.degree, ctx.red, ctx.phi)
            slow = pyimpl.rref(list(rows), m, ctx.degree, ctx.red, ctx.phi)
            assert fast == slow
            assert _speedups.rank(list(rows), m, ctx.degree, ctx.red) == \
                pyimpl.rank(list(rows), m, ctx.degree, ctx.red) == len(slow[0])
            out, pivots = slow
            assert _speedups.nullspace(out, pivots, m, ctx.degree, ctx.red) == \
                pyimpl.nullspace(out, pivots, m, ctx.degree, ctx.red)

    def test_in_rowspace_and_dot(self):
        rng = random.Random(4)
        for _ in range(250):
            order = rng.choice(ORDERS)
            ctx = field_context(order)
            m = rng.randint(1, 5)
            rows = random_rows(rng, m, ctx.degree, rng.randint(1, 4))
            out, pivots = pyimpl.rref(list(rows), m, ctx.degree, ctx.red, ctx.phi)
            probe = random_rows(rng, m, ctx.degree, 1)[0]
            assert _speedups.in_rowspace(probe, out, pivots, m, ctx.degree, ctx.red) \
                == pyimpl.in_rowspace(probe, out, pivots, m, ctx.degree, ctx.red)
            other = random_rows(rng, m, ctx.degree, 1)[0]
            assert _speedups.dot(probe, other, m, ctx.degree, ctx.red) == \
                pyimpl.dot(probe, other, m, ctx.degree, ctx.red)

    def test_members_in_rowspace_detected(self):
        rng = random.Random(5)
        for _ in range(100):
            order = rng.choice(ORDERS)
            ctx = field_context(order)
            m = rng.randint(2, 5)
            rows = random_rows(rng, m, ctx.degree, rng.randint(1, 3))
            out, pivots = pyimpl.rref(list(rows), m, ctx.degree, ctx.red, ctx.phi)
            if not out:
                continue
            member = out[rng.randrange(len(out))]
            scaled = (tuple(v * 3 for v in member[0]), member[1] * 2)
            for impl in (pyimpl, _speedups):
                assert impl.in_rowspace(scaled, out, pivots, m, ctx.degree, ctx.red)
