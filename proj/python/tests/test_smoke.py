# Copyright 2026 The dashmip Authors.
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
import os

import pytest

import dashmip

TWO_VAR = """NAME          TWOVAR
OBJSENSE
    MAX
ROWS
 N  OBJ
 L  CAP
COLUMNS
    MARKER                 'MARKER'                 'INTORG'
    X         OBJ       1.0        CAP       1.0
    Y         OBJ       1.0        CAP       1.0
    MARKER                 'MARKER'                 'INTEND'
RHS
    RHS       CAP       3.0
BOUNDS
 UP BND       X         2.0
 UP BND       Y         2.0
ENDATA
"""


def test_parse_and_round_trip():
    p = dashmip.parse_mps(TWO_VAR)
    assert p.name == "TWOVAR"
    assert p.num_vars == 2 and p.num_rows == 1
    assert p.maximize
    assert p.kinds == ["integer", "integer"]
    assert dashmip.validate(p) == []
    again = dashmip.parse_mps(dashmip.write_mps(p))
    assert again.objective == p.objective and again.upper == p.upper


def test_parse_error_is_value_error():
    with pytest.raises(ValueError):
        dashmip.parse_mps("NAME BAD\nROWS\n N OBJ\nCOLUMNS\n X OBJ 1 R9 2\nENDATA\n")


def test_solve_static_heuristics_agree():
    p = dashmip.parse_mps(TWO_VAR)
    for h in dashmip.heuristics:
        r = dashmip.solve(p, heuristic=h)
        assert r["status"] == "optimal"
        assert r["objective"] == pytest.approx(3.0)
        assert sum(r["incumbent"]) == pytest.approx(3.0)
    with pytest.raises(ValueError):
        dashmip.solve(p, heuristic="strong")


def test_lp_relaxation_bounds_the_integer_optimum():
    p = dashmip.generate("knapsack", 3)
    lp = dashmip.solve_lp(p)
    mip = dashmip.solve(p, heuristic="pw")
    assert lp["status"] == "optimal" and mip["status"] == "optimal"
    assert lp["objective"] >= mip["objective"] - 1e-6


def test_features_have_fixed_width():
    p = dashmip.generate("setcover", 1)
    f = dashmip.compute_features(p)
    assert len(f) == len(dashmip.feature_names()) == 40
    assert all(math.isfinite(x) for x in f)
    g = dashmip.compute_features(p, [(0, 1.0, 1.0)], depth=1)
    assert g[39] == 1.0


def test_clustering_and_stats():
    pts = [[0.0, 0.0], [0.1, 0.0], [10.0, 10.0], [10.1, 10.0]]
    centers, assignment = dashmip.kmeans(pts, 2, seed=1)
    assert assignment[0] == assignment[1] != assignment[2] == assignment[3]
    assert dashmip.nearest_center([9.0, 9.0], centers) == assignment[2]
    assert len(dashmip.gmeans(pts, min_cluster_size=2)) >= 1
    assert dashmip.information_gain([0, 0, 1, 1], [0, 0, 1, 1], 2) == pytest.approx(1.0)


def test_metrics():
    recs = [
        {"status": "solved", "seconds": 10.0},
        {"status": "timeout", "seconds": 1800.0},
    ]
    assert dashmip.par10(recs, 1800.0) == pytest.approx((10.0 + 18000.0) / 2)
    assert dashmip.avg(recs) == pytest.approx(10.0)
    assert dashmip.pct_solved(recs) == pytest.approx(50.0)


def test_pca_projection():
    coords, axes, variances = dashmip.pca_project([[1, 0], [-1, 0], [3, 0], [-3, 0]])
    assert len(coords) == 4
    assert abs(axes[0][0]) == pytest.approx(1.0)


def test_train_and_solve_with_model(tmp_path):
    for i in range(3):
        p = dashmip.generate("knapsack", i)
        (tmp_path / f"k{i}.mps").write_text(dashmip.write_mps(p))
    config = dashmip.default_config()
    config["node_limit"] = 500
    model = dashmip.train(str(tmp_path), config)
    assert model["centers"]
    r = dashmip.solve(str(tmp_path / "k0.mps"), model=model)
    assert r["status"] in ("optimal", "node_limit")
    model_path = tmp_path / "model.json"
    import json
    model_path.write_text(json.dumps(model))
    assert dashmip.load_model(str(model_path))["centers"] == model["centers"]
