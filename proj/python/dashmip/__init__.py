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

"""Python bindings for the dashmip branch-and-bound solver."""

import json
import os

from ._dashmip import (
    ContractViolation,
    MipProblem,
    ModelError,
    MpsError,
    anderson_darling,
    avg,
    compute_features,
    families,
    feature_names,
    generate,
    gmeans,
    heuristics,
    information_gain,
    kmeans,
    nearest_center,
    par10,
    parse_mps,
    pca_project,
    pct_solved,
    read_mps,
    score_product,
    score_weighted,
    solve_lp,
    validate,
    write_mps,
)
from . import _dashmip

__all__ = [
    "ContractViolation", "MipProblem", "ModelError", "MpsError", "anderson_darling",
    "avg", "compute_features", "default_config", "families", "feature_names",
    "generate", "gmeans", "heuristics", "information_gain", "kmeans", "load_model",
    "nearest_center", "par10", "parse_mps", "pca_project", "pct_solved", "read_mps",
    "score_product", "score_weighted", "solve", "solve_lp", "train", "validate",
    "write_mps",
]


def solve(problem, heuristic="mf", model=None, node_limit=0, time_limit=0.0):
    """Solve with a static heuristic, or with a model (dict or JSON path)."""
    if isinstance(problem, (str, os.PathLike)):
        problem = read_mps(os.fspath(problem))
    model_json = ""
    if model is not None:
        model_json = json.dumps(load_model(model) if isinstance(model, (str, os.PathLike))
                                else model)
    return _dashmip._solve(problem, heuristic, model_json, node_limit, time_limit)


def train(paths, config=None):
    """Train on .mps paths (or a directory) and return the model as a dict."""
    if isinstance(paths, (str, os.PathLike)) and os.path.isdir(paths):
        paths = sorted(os.path.join(paths, f) for f in os.listdir(paths)
                       if f.endswith(".mps"))
    return json.loads(_dashmip._train([os.fspath(p) for p in paths],
                                      json.dumps(config) if config else ""))


def default_config():
    return json.loads(_dashmip._default_config())


def load_model(path):
    return json.loads(_dashmip._load_model(os.fspath(path)))
