"""Deliberation dynamics in metric spaces.

Scenario arguments accept a dict, JSON text, a path to a scenario file, or
the name of a built-in fixture.
"""

import json
import os

from . import _delib
from ._delib import DelibError, best_common_proposal, fixture_names, separated_proposal

__all__ = [
    "DelibError",
    "batch",
    "best_common_proposal",
    "explore",
    "fixture",
    "fixture_names",
    "generate",
    "max_support",
    "run",
    "scenario_text",
    "separated_proposal",
    "transitions",
]


def scenario_text(scenario):
    if isinstance(scenario, dict):
        return json.dumps(scenario)
    text = str(scenario)
    if text.lstrip().startswith("{"):
        return text
    if os.path.exists(text):
        with open(text, encoding="utf-8") as f:
            return f.read()
    return _delib.fixture(text)


def _config_text(config):
    return json.dumps(config) if isinstance(config, dict) else str(config)


def fixture(name):
    return json.loads(_delib.fixture(name))


def run(scenario, policy, seed=0, step_cap=None, selector="uniform_random"):
    """Trace of one maximal run, as a dict."""
    return json.loads(_delib.run(scenario_text(scenario), policy, seed, step_cap, selector))


def transitions(scenario, kinds=()):
    return json.loads(_delib.transitions(scenario_text(scenario), list(kinds)))


def max_support(scenario):
    return json.loads(_delib.max_support(scenario_text(scenario)))


def explore(scenario, kinds=(), state_cap=200_000, cross_check=False, agent_cap=8):
    return json.loads(_delib.explore(scenario_text(scenario), list(kinds), state_cap, cross_check, agent_cap))


def batch(generator, policies, first_seed, last_seed, threads=0):
    """Summary CSV text; one row per (seed, policy)."""
    return _delib.batch(_config_text(generator), list(policies), first_seed, last_seed, threads)


def generate(generator, seed):
    return json.loads(_delib.generate(_config_text(generator), seed))
