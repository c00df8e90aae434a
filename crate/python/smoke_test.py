"""Smoke test for the cqca_py extension module.

Build the module first, then run this script:

    cargo build -p cqca-py --release
    python python/smoke_test.py
"""

import ctypes
import pathlib
import shutil
import sys
import tempfile


def load_module():
    root = pathlib.Path(__file__).resolve().parents[1]
    for profile in ("release", "debug"):
        built = root / "target" / profile / "libcqca_py.so"
        if built.exists():
            staging = pathlib.Path(tempfile.mkdtemp(prefix="cqca_py_"))
            shutil.copy(built, staging / "cqca_py.so")
            sys.path.insert(0, str(staging))
            import cqca_py

            return cqca_py
    sys.exit("build the extension first: cargo build -p cqca-py --release")


def main():
    cqca = load_module()

    dense = cqca.Circuit.preset("dense")
    assert dense.class_name() == "dense-good"
    assert "reflect-lr" in dense.symmetries()
    assert dense.char_poly() == dense.min_poly()
    assert dense.gliders(1) == []
    assert dense.recurrence_time(8) == 16
    assert dense.ergodicity() == "ErgodicMixing"

    bare = cqca.Circuit.preset("bare-iswap")
    assert [tau for tau in map(bare.recurrence_time, range(2, 9))] == list(range(2, 9))
    velocities = dict(bare.gliders(1))
    assert velocities == {"ZI": 1, "IZ": -1}
    channel = bare.correlation_channel("+")
    assert channel[0][0] == 1 and channel[3][3] == 1

    spec = '{"lattice":"square","core":"iswap","edges":["rx90","cminus"]}'
    df19 = cqca.Circuit(spec)
    assert df19.class_name() == "df19-good"
    dim, err = df19.fractal_dimension("trace", 1024)
    assert 1.7 < dim < 2.0, (dim, err)

    g = cqca.Stabilizers.random_product(12, 2, seed=7)
    assert g.entropy() == 0
    g = g.step(dense).step(dense).step(dense)
    page = g.page_curve()
    assert len(page) == 24 and page[11] > 6
    assert g.subsystem_entropy(0, 24) == 0

    measured, outcome = g.measure(0, "Z")
    assert outcome in {"Deterministic", "Random"}
    assert measured.entropy() == 0

    best_t, d1, rate = cqca.quasicyclic_code(dense, 10, 32)
    assert rate == 0.5 and d1 >= 4, (best_t, d1, rate)

    code = cqca.Stabilizers.from_strings(4, 2, ["ZZIIIIII", "IIZZIIII", "IIIIZZII"])
    p_fail, stderr = cqca.erasure_failure(code, 0.25, 2000, seed=1)
    assert 0.0 <= p_fail <= 1.0 and stderr < 0.05

    entropies, t_star, done = cqca.hybrid_purification(df19, 16, 64)
    assert entropies[0] == 16 and t_star == 16 and done
    assert entropies[:17] == list(range(16, -1, -1))

    print("smoke test passed")


if __name__ == "__main__":
    main()
