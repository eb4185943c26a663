import os
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from hallp1 import _kernels_py as pure
from hallp1 import kernels

compiled = kernels.compiled
needs_ext = pytest.mark.skipif(compiled is None, reason="compiled extension not built")

P = st.sampled_from([2, 3, 5])


@st.composite
def matrices(draw):
    p = draw(P)
    r, c = draw(st.integers(1, 6)), draw(st.integers(1, 6))
    rows = [[draw(st.integers(0, p - 1)) for _ in range(c)] for _ in range(r)]
    return rows, c, p


@needs_ext
@given(matrices())
def test_rank_and_nullspace_agree(m):
    rows, c, p = m
    assert compiled.rank_mod(rows, c, p) == pure.rank_mod(rows, c, p)
    assert compiled.nullspace_mod(rows, c, p) == pure.nullspace_mod(rows, c, p)
    assert compiled.rref_mod(rows, c, p) == pure.rref_mod(rows, c, p)


@given(matrices())
def test_rank_nullity(m):
    rows, c, p = m
    assert pure.rank_mod(rows, c, p) + len(pure.nullspace_mod(rows, c, p)) == c


@needs_ext
@settings(max_examples=25)
@given(P, st.integers(1, 4), st.data())
def test_stable_subspaces_agree(p, n, data):
    k = data.draw(st.integers(0, n))
    T = [[data.draw(st.integers(0, p - 1)) if j > i else 0 for j in range(n)] for i in range(n)]
    assert compiled.stable_subspaces(n, k, p, [T]) == pure.stable_subspaces(n, k, p, [T])


def test_grassmannian_count():
    # Gaussian binomial [4 choose 2]_2 = 35
    assert len(pure.stable_subspaces(4, 2, 2, [])) == 35


@needs_ext
@pytest.mark.parametrize("n1,n2,p", [(1, 1, 2), (2, 1, 3), (2, 2, 2), (0, 3, 2), (-1, 2, 3)])
def test_form_census_agree(n1, n2, p):
    assert compiled.form_pair_census(n1, n2, p) == pure.form_pair_census(n1, n2, p)


def test_pure_fallback_selected_by_env():
    env = dict(os.environ, HALLP1_PURE="1")
    out = subprocess.run([sys.executable, "-c", "from hallp1 import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
