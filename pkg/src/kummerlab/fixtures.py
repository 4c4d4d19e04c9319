"""Locate and read the JSON data files shipped with the package.

The files live in the installed package under ``kummerlab/fixtures``;
the environment variable ``KUMMERLAB_FIXTURES`` overrides the directory,
which is how tests exercise broken-data paths and how a user can swap in
regenerated files. Reading and structural validation happen here; the
geometric cross-checks (does a stored curve really pass through the
points it claims?) live next to the geometry, in the loaders of the
modules that own each file.
"""

from __future__ import annotations

import json
import os
from importlib import resources


class FixtureError(Exception):
    """A shipped data file is missing, malformed, or fails a cross-check.

    The command line driver maps this to its own exit code, distinct from
    the one used for a falsified geometric claim, so a broken installation
    is not mistaken for a mathematical failure.
    """


def fixtures_dir():
    override = os.environ.get("KUMMERLAB_FIXTURES")
    if override:
        return override
    return str(resources.files("kummerlab") / "fixtures")


def load_json(name):
    path = os.path.join(fixtures_dir(), name)
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise FixtureError(f"missing data file {path}") from exc
    except json.JSONDecodeError as exc:
        raise FixtureError(f"malformed JSON in {path}: {exc}") from exc


def expect_keys(obj, keys, where):
    if not isinstance(obj, dict):
        raise FixtureError(f"{where}: expected an object, got {type(obj).__name__}")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise FixtureError(f"{where}: missing keys {missing}")
