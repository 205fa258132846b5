"""Python interface to the shapeflow C++ core."""

import json

from ._shapeflow import *  # noqa: F401,F403
from ._shapeflow import ShapeflowError, _run_experiment_json, __version__


def run_experiment(config):
    """Run an experiment from a config dict and return its summary dict."""
    return json.loads(_run_experiment_json(json.dumps(config)))


__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
