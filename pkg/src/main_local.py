#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
ストリング2群検証カーネル - ローカル実行用メインスクリプト

`python src/main_local.py sm check --seed 7` のように、インストールせずに
string2g コマンドを実行します。
"""

import sys
from pathlib import Path

# srcディレクトリをパスに追加
sys.path.insert(0, str(Path(__file__).parent))

from string2g.cli import main  # noqa: E402

if __name__ == "__main__":
    main()
