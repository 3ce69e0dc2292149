#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
main_local.py のテスト
"""

from unittest.mock import patch

import pytest


class TestMainLocal:
    """main_local.py のテスト"""

    def test_main_is_cli_entry(self):
        """main が string2g コマンドの入口であることを確認"""
        from src.main_local import main

        assert main.__module__ == "string2g.cli"

    def test_version(self, capsys):
        """--version で終了コード0になることを確認"""
        from src.main_local import main

        with patch("sys.argv", ["string2g", "--version"]):
            with pytest.raises(SystemExit) as exc_info:
                main()

        assert exc_info.value.code == 0
        assert "string2g" in capsys.readouterr().out

    def test_without_arguments(self, capsys):
        """引数なしで使い方を表示し終了コード2になることを確認"""
        from src.main_local import main

        with patch("sys.argv", ["string2g"]):
            with pytest.raises(SystemExit) as exc_info:
                main()

        assert exc_info.value.code == 2
        assert "Usage" in capsys.readouterr().err
