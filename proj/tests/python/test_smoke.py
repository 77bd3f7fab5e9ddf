# Copyright 2026 The adaptix authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# =============================================================================

import math

import pytest

import adaptix


def test_ftrl_closed_form():
    assert adaptix.ftrl_eta(0.0, 0.0, 10.0, 2.0) == pytest.approx(0.5)
    assert adaptix.ftrl_eta(5.0, 20.0, 10.0, 10.0) == pytest.approx(0.05)
    assert adaptix.ftrl_eta(-100.0, 1.0, 10.0, 10.0) == 0.0


def test_schedules():
    assert adaptix.schedule_eval("cosine", 1.0, 2, horizon=4) == pytest.approx(0.5)
    assert adaptix.schedule_eval("cosine", 1.0, 4, horizon=4) == pytest.approx(0.0)
    alpha = (2.0 / 100.0) ** 0.01
    assert adaptix.schedule_eval(
        "exponential_beta", 1.0, 1, beta=2.0, horizon=100
    ) == pytest.approx(alpha)


def test_quadratic_problem():
    q = adaptix.make_quadratic([2.0, 4.0], [2.0, -4.0])
    assert q.dim == 2
    assert q.meta.minimizer == pytest.approx([-1.0, 1.0])
    assert q.grad([0.0, 0.0]) == pytest.approx([2.0, -4.0])
    fd = adaptix.finite_diff_grad(q, [0.3, -0.7], 1e-6)
    assert fd == pytest.approx(q.grad([0.3, -0.7]), abs=1e-6)


def test_gsign_bounded_updates():
    eta, beta2 = 0.1, 0.99
    bound = eta / math.sqrt(1.0 - beta2)
    opt = adaptix.GSignOptimizer([5.0], eta, 0.9, beta2)
    rng = adaptix.Rng(3)
    prev = opt.x[0]
    for _ in range(500):
        opt.step([[1e4 * rng.gauss()]])
        assert abs(opt.x[0] - prev) <= bound * (1 + 1e-12)
        prev = opt.x[0]


def test_sgdol_two_draw_contract():
    p = adaptix.make_fraction_poly()
    opt = adaptix.SgdolOptimizer([1.0], 10.0, 2.0)
    assert opt.grads_per_step() == 2
    assert opt.current_eta == pytest.approx(0.5)
    oracle = adaptix.GradOracle(p, adaptix.NoiseModel.gaussian(0.1), seed=1)
    for _ in range(50):
        g, gp = oracle.sample_two_grads(opt.x)
        opt.step([g, gp])
    assert oracle.calls == 100


def test_libsvm_round_trip():
    ds = adaptix.parse_libsvm("1 1:0.5 3:2\n-1 2:1 3:-4\n")
    assert ds.labels == [1.0, -1.0]
    assert ds.features[0] == [0.5, 0.0, 2.0]
    again = adaptix.parse_libsvm(adaptix.serialize_libsvm(ds))
    assert again.features == ds.features
    with pytest.raises(adaptix.ParseError):
        adaptix.parse_libsvm("1 3:a\n")


def test_run_experiment_from_toml():
    config = """
[problem]
kind = "fraction_poly"

[optimizer]
kind = "sgd"
schedule = "constant"
eta0 = 0.5

[run]
iters = 200
seeds = [1, 2]
record_every = 10
x0 = [1.0]
"""
    trajectory_csv, summary_csv = adaptix.run_experiment_toml(config)
    assert trajectory_csv.startswith("seed,iter,f_val")
    assert "fingerprint" in summary_csv
    # Noiseless constant-step run converges.
    last = trajectory_csv.strip().splitlines()[-1].split(",")
    assert float(last[3]) < 1e-8  # grad_norm_sq


def test_scale_free_audit_via_histogram():
    h_edges, counts, total = adaptix.update_histogram([0.0, 2.0 ** -30, 3.0])
    assert counts[0] == 2
    assert counts[-1] == 1
    assert total == 3
