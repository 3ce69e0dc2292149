#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
コマンドラインインターフェースのテスト
"""

import json
import os
from unittest.mock import patch

import pytest
from click.testing import CliRunner

from src.string2g.cli import cli, main


@pytest.fixture(autouse=True)
def no_file_logging():
    """ログファイルを作成しない"""
    with patch("src.string2g.cli.setup_logging") as mock_setup_logging:
        yield mock_setup_logging


@pytest.fixture
def runner():
    """CLIランナー"""
    return CliRunner()


def _invoke_to_file(runner, args, name="report.json"):
    """レポートをファイルに出力して読み込む"""
    result = runner.invoke(cli, args + ["--output", name])
    with open(name, "r", encoding="utf-8") as f:
        return result, f.read()


class TestUsage:
    """使い方エラーのテスト"""

    def test_no_arguments(self, runner):
        """引数なしで使い方を表示し終了コード2になることを確認"""
        result = runner.invoke(cli, [])

        assert result.exit_code == 2
        assert "Usage" in result.output

    def test_unknown_option(self, runner):
        """未知のフラグで終了コード2になることを確認"""
        result = runner.invoke(cli, ["sm", "check", "--colour", "red"])

        assert result.exit_code == 2
        assert "Usage" in result.output

    def test_invalid_choice(self, runner):
        """選択肢外の値で終了コード2になることを確認"""
        result = runner.invoke(cli, ["twogroup", "check", "--law", "hexagon"])

        assert result.exit_code == 2

    def test_invalid_tolerance(self, runner):
        """設定値の検証エラーで終了コード2になることを確認"""
        result = runner.invoke(cli, ["sm", "check", "--tol", "0"])

        assert result.exit_code == 2
        assert "設定エラー" in result.output

    def test_unknown_config_key(self, runner):
        """設定ファイルの未知のキーで終了コード2になることを確認"""
        with runner.isolated_filesystem():
            with open("string2g.yaml", "w", encoding="utf-8") as f:
                f.write("colour: red\n")
            result = runner.invoke(cli, ["sm", "check", "--config", "string2g.yaml"])

        assert result.exit_code == 2
        assert "未知の設定キー" in result.output

    def test_version(self, runner):
        """バージョン表示を確認"""
        result = runner.invoke(cli, ["--version"])

        assert result.exit_code == 0
        assert "string2g" in result.output


class TestSmCheck:
    """sm check のテスト"""

    def test_passes_with_four_checks(self, runner):
        """sm check が合格し4つの残差エントリを持つことを確認"""
        with runner.isolated_filesystem():
            result, text = _invoke_to_file(
                runner, ["sm", "check", "--seed", "7", "--samples", "20"]
            )

        assert result.exit_code == 0
        report = json.loads(text)
        assert report["command"] == "sm check"
        assert report["seed"] == 7
        assert report["config"]["samples"] == 20
        assert len(report["checks"]) == 4
        assert report["passed"] is True

    def test_stdout_report(self, runner):
        """既定で標準出力にJSONが1回だけ出力されることを確認"""
        result = runner.invoke(cli, ["sm", "check", "--seed", "7", "--samples", "5"])

        assert result.exit_code == 0
        assert result.output.count('"schema_version"') == 1
        assert json.loads(result.output)["passed"] is True

    def test_byte_identical_reports(self, runner):
        """同じ設定の実行が同じバイト列になることを確認"""
        args = ["sm", "check", "--seed", "3", "--samples", "10"]
        with runner.isolated_filesystem():
            _, first = _invoke_to_file(runner, args, "first.json")
            _, second = _invoke_to_file(
                runner, args + ["--threads", "2"], "second.json"
            )

        assert first == second

    def test_text_format(self, runner):
        """テキスト形式の出力を確認"""
        result = runner.invoke(
            cli, ["sm", "check", "--samples", "5", "--format", "text"]
        )

        assert result.exit_code == 0
        assert result.output.startswith("sm check: PASS")

    def test_double_complex_target(self, runner):
        """二重複体の検証対象を選べることを確認"""
        with runner.isolated_filesystem():
            result, text = _invoke_to_file(
                runner,
                ["sm", "check", "--target", "double-complex", "--samples", "5"],
            )

        assert result.exit_code == 0
        assert json.loads(text)["target"] == "double-complex"


class TestExitCodes:
    """終了コードのテスト"""

    def _report(self, passed):
        return {"command": "cover check", "checks": {}, "passed": passed}

    def test_failing_check_exits_one(self, runner):
        """チェック不合格で終了コード1になることを確認"""
        with patch(
            "src.string2g.cli.VerificationKernel.run",
            return_value=self._report(False),
        ):
            result = runner.invoke(cli, ["cover", "check"])

        assert result.exit_code == 1

    def test_passing_check_exits_zero(self, runner):
        """チェック合格で終了コード0になることを確認"""
        with patch(
            "src.string2g.cli.VerificationKernel.run",
            return_value=self._report(True),
        ):
            result = runner.invoke(cli, ["cover", "check"])

        assert result.exit_code == 0

    @patch("src.string2g.cli.log_error")
    def test_unexpected_error_exits_one(self, mock_log_error, runner):
        """予期しない例外で終了コード1になることを確認"""
        with patch(
            "src.string2g.cli.VerificationKernel.run",
            side_effect=RuntimeError("boom"),
        ):
            result = runner.invoke(cli, ["cover", "check"])

        assert result.exit_code == 1
        mock_log_error.assert_called_once()

    def test_invalid_bundle_exits_two(self, runner):
        """不正なバンドルで終了コード2になることを確認"""
        with runner.isolated_filesystem():
            with open("bundle.json", "w", encoding="utf-8") as f:
                f.write("[1, 2, 3]")
            with patch(
                "src.string2g.core.load_bundle",
                side_effect=ValueError("バンドルが不正です"),
            ):
                result = runner.invoke(
                    cli, ["cocycle", "validate", "--in", "bundle.json"]
                )

        assert result.exit_code == 2
        assert "バンドルが不正です" in result.output


class TestArgumentForwarding:
    """コマンド固有の引数の受け渡しのテスト"""

    def _run(self, runner, args):
        with patch(
            "src.string2g.cli.VerificationKernel.run",
            return_value={"checks": {}, "passed": True},
        ) as mock_run, patch("src.string2g.cli.VerificationKernel.save"):
            result = runner.invoke(cli, args)
        assert result.exit_code == 0
        return mock_run

    def test_twogroup_law(self, runner):
        """--law が渡されることを確認"""
        mock_run = self._run(runner, ["twogroup", "check", "--law", "interchange"])

        mock_run.assert_called_once_with("twogroup check", law="interchange")

    def test_linfty_algebra(self, runner):
        """--algebra が渡されることを確認"""
        mock_run = self._run(runner, ["linfty", "check", "--algebra", "spin4"])

        mock_run.assert_called_once_with("linfty check", algebra="spin4")

    def test_sds_samples_key(self, runner):
        """sds verify の --samples が自己双対弦のサンプル数になることを確認"""
        with patch("src.string2g.cli.VerificationKernel") as mock_kernel:
            kernel = mock_kernel.return_value.__enter__.return_value
            kernel.run.return_value = {"checks": {}, "passed": True}
            result = runner.invoke(
                cli, ["sds", "verify", "--solution", "2", "--samples", "64"]
            )

        assert result.exit_code == 0
        config = mock_kernel.call_args[0][0]
        assert config.fields.sds_samples == 64
        assert config.sampling.samples == 256
        kernel.run.assert_called_once_with("sds verify", solution=2, csv_path=None)

    def test_cocycle_kind_and_path(self, runner):
        """--kind と --in が渡されることを確認"""
        with runner.isolated_filesystem():
            with open("bundle.json", "w", encoding="utf-8") as f:
                f.write("{}")
            mock_run = self._run(
                runner,
                ["cocycle", "validate", "--kind", "weak", "--in", "bundle.json"],
            )

        mock_run.assert_called_once_with(
            "cocycle validate", path="bundle.json", kind="weak"
        )

    def test_missing_bundle(self, runner):
        """存在しないバンドルで終了コード2になることを確認"""
        result = runner.invoke(
            cli, ["cocycle", "validate", "--in", os.path.join("no", "such.json")]
        )

        assert result.exit_code == 2


class TestMain:
    """エントリポイントのテスト"""

    def test_main_without_arguments(self):
        """引数なしのmainが終了コード2で終わることを確認"""
        with patch("sys.argv", ["string2g"]):
            with pytest.raises(SystemExit) as exc_info:
                main()

        assert exc_info.value.code == 2
