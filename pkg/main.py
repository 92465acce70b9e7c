"""Entry point for running the ecs CLI from a checkout."""
from __future__ import annotations

import sys
from pathlib import Path

CURRENT_DIR = Path(__file__).resolve().parent
PARENT_DIR = CURRENT_DIR.parent
SRC_DIR = CURRENT_DIR / "src"

if __package__ in {None, ""}:  # support running via `python main.py`
    if str(SRC_DIR) not in sys.path:
        sys.path.insert(0, str(SRC_DIR))

from dotenv import load_dotenv

# 先載入上層目錄/.env（若有），再載入 repo 根目錄/.env 覆寫
load_dotenv(PARENT_DIR / ".env")
load_dotenv(CURRENT_DIR / ".env", override=True)

from ecs.utils.paths import set_core_root

set_core_root(CURRENT_DIR)

from ecs.cli import main

if __name__ == "__main__":
    sys.exit(main())
