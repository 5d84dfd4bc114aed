# SPDX-License-Identifier: MIT OR Apache-2.0
"""Smoke test for the Python extension.

Builds the extension with cargo, copies it next to this file as creche.so
and exercises the main entry points.

    python3 python/smoke_test.py
"""

import json
import os
import shutil
import subprocess
import sys
import tempfile

HERE = os.path.dirname(os.path.abspath(__file__))
ROOT = os.path.dirname(HERE)


def build():
    subprocess.run(["cargo", "build", "--release", "-p", "creche-py"], cwd=ROOT, check=True)
    lib = os.path.join(ROOT, "target", "release", "libcreche_py.so")
    dest = os.path.join(tempfile.mkdtemp(), "creche.so")
    shutil.copy(lib, dest)
    sys.path.insert(0, os.path.dirname(dest))


def main():
    if os.environ.get("CRECHE_SKIP_BUILD") != "1":
        build()
    import creche

    # Match lengths, small worked example.
    prof = creche.MatchProfile([0, 1, 0, 1])
    assert prof.match_lengths() == [3, 2, 3, 2]
    assert prof.match_position_set(0) == [2]
    assert creche.MatchProfile([0, 0, 0, 0]).match_lengths() == [4, 4, 3, 2]

    # Disconnected halves: exact minimum at the split.
    targets = [(i * 7 + 3) % 50 if i < 50 else 50 + (i * 13 + 5) % 50 for i in range(100)]
    est, curves = creche.crossing_curves(targets)
    assert est.j_star == 50 and est.gamma_hat == 0.5, est
    assert len(curves.psi) == 99 and len(curves.c_lr) == 100

    # Two IID sources joined at 20%.
    left = creche.sample_source('{"type":"iid","probs":[0.1,0.3,0.6]}', 10000, seed=1)
    right = creche.sample_source('{"type":"iid","probs":[0.5,0.25,0.25]}', 40000, seed=2)
    est, _ = creche.detect_symbols(left + right, seed=3)
    assert abs(est.gamma_hat - 0.2) <= 0.03, est
    est_bytes, _ = creche.detect(bytes(97 + s for s in left + right), seed=3)
    assert est_bytes.j_star == est.j_star

    # Two-block model theory.
    m = creche.ModelB(10000, 0.4, 0.2, 0.2)
    assert m.change_index == 4000
    d_lr, _ = m.d_min()
    assert abs(d_lr + 0.246153846) < 1e-8
    assert 140 < m.consistency_constant() < 141.5
    assert m.consistency_bound(8.0) == 1.0
    assert len(m.sample(0)) == 10000

    # Entropy of a fair coin.
    coin = creche.sample_source('{"type":"iid","probs":[0.5,0.5]}', 100000, seed=4)
    h = creche.estimate_entropy(bytes(coin))
    assert 0.85 <= h <= 1.15, h

    # Experiment specs.
    summary = json.loads(creche.run_experiment('{"kind":"null","n":2000,"trials":50,"seed":1}'))
    assert summary["trials"] == 50

    # Errors map to ValueError.
    for bad in (lambda: creche.ModelB(100, 1.5, 0.2, 0.2), lambda: creche.detect(b"x")):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")

    print("python smoke test passed (creche %s)" % creche.__version__)


if __name__ == "__main__":
    main()
