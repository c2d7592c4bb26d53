import os
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from affpieces import build_affine_cartan, kernels
from affpieces.weyl import ball_enumerate, from_word

BACKENDS = kernels.backends()
native = BACKENDS.get("cython")
needs_native = pytest.mark.skipif(native is None, reason="compiled kernels not built")
py = BACKENDS["python"]

SPECS = [build_affine_cartan(*fr) for fr in (("A", 1), ("A", 2), ("C", 2), ("G", 2), ("B", 3))]


def element_flats(spec, data):
    word = data.draw(st.lists(st.integers(0, spec.size - 1), max_size=14))
    return from_word(spec, word).flat


@needs_native
@settings(max_examples=200, deadline=None)
@given(st.integers(0, len(SPECS) - 1), st.data())
def test_backends_agree(k, data):
    spec = SPECS[k]
    n, A = spec.size, spec.flat
    w = element_flats(spec, data)
    v = element_flats(spec, data)
    i = data.draw(st.integers(0, n - 1))
    for name in ("right_reflect", "left_reflect"):
        assert getattr(native, name)(w, A, n, i) == getattr(py, name)(w, A, n, i)
    assert native.mat_mul(w, v, n) == py.mat_mul(w, v, n)
    assert native.right_descent_mask(w, n) == py.right_descent_mask(w, n)
    assert native.strip(w, A, n) == py.strip(w, A, n)


@needs_native
@pytest.mark.parametrize("spec", SPECS[:4], ids=lambda s: s.label)
def test_layer_expansion_agrees(spec):
    flats = [e.flat for e in ball_enumerate(spec, 3) if e.length == 3]
    assert native.expand_layer(flats, spec.flat, spec.size) == py.expand_layer(flats, spec.flat, spec.size)


def test_descent_mask_rejects_mixed_column():
    for mod in BACKENDS.values():
        with pytest.raises(ValueError):
            mod.right_descent_mask((1, -1, 0, 1), 2)


@needs_native
def test_overflow_falls_back_to_python():
    big = 1 << 40
    w = (big, 0, 0, 1)
    A = (2, -2, -2, 2)
    with pytest.raises(OverflowError):
        native.mat_mul(w, w, 2)
    assert kernels.mat_mul(w, w, 2) == (big * big, 0, 0, 1)
    assert kernels.right_reflect(w, A, 2, 0) == py.right_reflect(w, A, 2, 0)


def test_env_forces_python_backend():
    env = dict(os.environ, AFFPIECES_KERNELS="python")
    out = subprocess.run([sys.executable, "-c", "from affpieces import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
