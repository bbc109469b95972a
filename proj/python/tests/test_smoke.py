# Copyright 2026 The Authors.
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

import math

import pytest

import beambit

TINY = {
    "scenario": "rayleigh",
    "n_rx": 8,
    "n_users": 3,
    "n_chains": 4,
    "chain_cap": 4,
    "n_subcarriers": 4,
    "n_taps": 2,
    "tx_power_dbm": [0, 10],
    "b_ref": 3,
    "delta": 2,
    "n_drops": 2,
    "seed": 5,
}


def test_alpha():
    assert beambit.alpha_of(1) == pytest.approx(2 / math.pi)
    assert beambit.alpha_of(beambit.INFINITE_BITS) == 1.0
    assert beambit.alpha_of(6) == pytest.approx(1 - math.pi * math.sqrt(3) / 2 * 4.0**-6)
    with pytest.raises(ValueError):
        beambit.alpha_of(0)
    assert len(beambit.adc_table()["lut"]) == 5


def test_prune():
    assert beambit.prune([(1, 2), (1, 4), (0, 3)]) == [(0, 3), (1, 4)]


def test_problem_round_trip():
    p = beambit.Problem.random(seed=3)
    q = beambit.Problem.from_json(p.to_json())
    sel = [(0, 2), (5, 4)]
    assert q.wsr(sel) == p.wsr(sel)
    assert p.wsr([]) == 0.0
    assert p.beam_variance(0) >= 1.0
    rates = p.corner_rates(sel)
    assert len(rates) == p.n_users
    assert sum(rates) == pytest.approx(p.levels(sel)[-1])


def test_joint_select_is_feasible_and_below_brute_force():
    p = beambit.Problem.random(n_rx=6, seed=11)
    kw = dict(bits=[1, 2, 3, 4], eps_beam=1.0, theta=0.1, b_ref=3, budget_e=4.0, budget_m=3)
    r = p.joint_select(**kw)
    assert r["energy"] <= 4.0 + 1e-9
    assert len({b for b, _ in r["selection"]}) <= 3
    lazy_evals = p.evaluations
    sel, best = p.brute_force(**kw)
    assert best >= r["value"] - 1e-9
    assert lazy_evals > 0


def test_solve_and_sweep():
    joint = beambit.solve(TINY, "joint", seed=7)
    again = beambit.solve(TINY, "joint", seed=7)
    assert joint == again
    assert joint["energy"] <= joint["budget"] * (1 + 1e-12)
    with pytest.raises(ValueError):
        beambit.solve(TINY, "nope")
    csv = beambit.sweep_csv(TINY, "power")
    assert csv == beambit.sweep_csv(TINY, "power")
    assert len(csv.strip().splitlines()) == 1 + 2 * 4
    tables = beambit.tables_csv(csv).strip().splitlines()
    assert tables[0] == "metric,power=0,power=10"


def test_verify_quick_subset():
    results = beambit.verify(quick=True, only=[9, 10])
    assert [r["id"] for r in results] == [9, 10]
    assert all(r["passed"] for r in results)
