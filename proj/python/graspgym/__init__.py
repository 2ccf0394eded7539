# Copyright 2026 The GraspGym Authors
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
"""Directional semantic grasping: simulator, data generation, DDQN training and evaluation.

Configurations are plain dicts with the same keys as the JSON files accepted by
the ``graspgym`` command-line tool. Missing keys keep their defaults.
"""

import json as _json
import os as _os

from . import _graspgym
from ._graspgym import (
    ConfigError,
    ContractError,
    FormatError,
    NumericError,
    ProtocolError,
    derive_seed,
    read_dataset,
    read_header,
)

__all__ = [
    "ConfigError",
    "ContractError",
    "FormatError",
    "NumericError",
    "ProtocolError",
    "default_config",
    "derive_seed",
    "evaluate",
    "gen",
    "read_dataset",
    "read_header",
    "render",
    "train",
]


def _text(config):
    if config is None:
        return ""
    if isinstance(config, str):
        return config
    return _json.dumps(config)


def default_config():
    """Default run configuration as a dict."""
    return _json.loads(_graspgym.default_config())


def normalize_config(config):
    """Validated configuration with every key filled in."""
    return _json.loads(_graspgym.normalize_config(_text(config)))


def gen(out, episodes, workers=1, config=None):
    """Collects biased-policy episodes into a dataset file and returns its header."""
    return _graspgym.gen(_text(config), int(episodes), int(workers), _os.fspath(out))


def train(data, out, steps=-1, config=None, metrics=""):
    """Trains a Q-network on a dataset; steps < 0 uses the configured total."""
    return _graspgym.train(_text(config), _os.fspath(data), _os.fspath(out), int(steps),
                           _os.fspath(metrics))


def evaluate(model="", episodes=200, seed=0, policy="greedy", randomized_scenes=0,
             config=None, report=""):
    """Runs evaluation episodes and returns the report as a dict."""
    text = _graspgym.evaluate(_text(config), _os.fspath(model), int(episodes), int(seed),
                              policy, int(randomized_scenes), _os.fspath(report))
    return _json.loads(text)


def render(prefix, seed=0, heldout=False, config=None):
    """Writes the raw frame and the observation as PNGs; returns both paths."""
    return _graspgym.render(_text(config), int(seed), _os.fspath(prefix), bool(heldout))
