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
"""Joint beam and ADC resolution selection."""

import json

from beambit._core import (
    INFINITE_BITS,
    Problem,
    alpha_of,
    prune,
    tables_csv,
    verify,
)
from beambit import _core

__all__ = [
    "INFINITE_BITS",
    "Problem",
    "adc_table",
    "alpha_of",
    "prune",
    "solve",
    "sweep_csv",
    "tables_csv",
    "verify",
]


def _config_text(config):
    return config if isinstance(config, str) else json.dumps(config)


def adc_table():
    return json.loads(_core.adc_table_json())


def solve(config, algo="joint", seed=1):
    """Runs one drop of `config` (a dict or JSON text) with one algorithm."""
    return _core.solve(_config_text(config), algo, seed)


def sweep_csv(config, axis="power"):
    return _core.sweep_csv(_config_text(config), axis)
