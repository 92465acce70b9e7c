"""Pytest fixtures for ecs-sim tests."""
from __future__ import annotations

import sys
from pathlib import Path

import pytest


PROJECT_ROOT = Path(__file__).resolve().parents[1]
SRC_ROOT = PROJECT_ROOT / "src"

if str(SRC_ROOT) not in sys.path:
    sys.path.insert(0, str(SRC_ROOT))

for module_name in list(sys.modules):
    if module_name == "ecs" or module_name.startswith("ecs."):
        sys.modules.pop(module_name)


@pytest.fixture
def config_root(tmp_path):
    """Point relative sweep and output paths at ``tmp_path`` for one test."""
    from ecs.utils.paths import get_config_root, set_config_root

    original_root = get_config_root()
    set_config_root(tmp_path)
    try:
        yield tmp_path
    finally:
        set_config_root(original_root)
