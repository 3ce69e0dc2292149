#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
検証カーネルのテスト
"""

import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from contextlib import ExitStack
from unittest.mock import MagicMock, patch

import pytest

from src.string2g._version import __version__
from src.string2g.config import ApplicationConfig, SamplingConfig, StorageConfig
from src.string2g.core import (
    COMMAND_TABLE,
    VerificationKernel,
    create_verification_kernel,
)
from src.string2g.storage import SCHEMA_VERSION, render_json
from src.string2g.utils import RNG_NAME


def _passing_report(*args, **kwargs):
    return {
        "checks": {"residual": {"max": 0.0, "passed": True}},
        "passed": True,
    }


# 各モジュールの公開検証器 → それを呼ぶべきコマンド
CHECKER_COMMANDS = {
    "create_sphere_cover": "cover build",
    "describe_cover": "cover inspect",
    "cover_check": "cover check",
    "is_sm_cocycle": "sm check",
    "check_double_complex": "sm check",
    "create_weak_two_group": "twogroup check",
    "validate_bundle": "cocycle validate",
    "superdiff_demo": "diff demo",
    "linfty_check": "linfty check",
    "sds_verify": "sds verify",
}

# コマンドごとの引数（複数の場合はすべて実行）
COMMAND_ARGUMENTS = {
    "sm check": [{"target": "cocycle"}, {"target": "double-complex"}],
    "twogroup check": [{"law": "pentagon"}],
    "cocycle validate": [{"path": "bundle.json"}],
    "linfty check": [{"algebra": "su2"}],
    "sds verify": [{"solution": 1}],
}


def _config(seed: int = 7, samples: int = 20, threads: int = 1) -> ApplicationConfig:
    return ApplicationConfig(
        threads=threads, sampling=SamplingConfig(seed=seed, samples=samples)
    )


class TestCommandTable:
    """コマンドテーブルのテスト"""

    def test_methods_exist(self):
        """すべてのコマンドに対応するメソッドがあることを確認"""
        methods = [method for method, _ in COMMAND_TABLE.values()]

        assert len(set(methods)) == len(methods)
        for method in methods:
            assert callable(getattr(VerificationKernel, method))

    def test_subcommand_groups(self):
        """サブコマンドのグループがそろっていることを確認"""
        groups = {command.split()[0] for command in COMMAND_TABLE}

        assert groups == {
            "cover",
            "sm",
            "twogroup",
            "cocycle",
            "diff",
            "linfty",
            "sds",
        }

    def test_each_checker_reachable_from_exactly_one_command(self):
        """各検証器がちょうど1つのコマンドから呼ばれることを確認"""
        callers = {name: set() for name in CHECKER_COMMANDS}
        mocks = {}

        with ExitStack() as stack:
            for name in CHECKER_COMMANDS:
                mocks[name] = stack.enter_context(
                    patch(f"src.string2g.core.{name}")
                )
            mocks["create_weak_two_group"].return_value.check.side_effect = (
                _passing_report
            )
            for name in ("cover_check", "is_sm_cocycle", "check_double_complex"):
                mocks[name].side_effect = _passing_report
            for name in ("validate_bundle", "superdiff_demo", "linfty_check"):
                mocks[name].side_effect = _passing_report
            mocks["sds_verify"].side_effect = _passing_report
            stack.enter_context(patch("src.string2g.core.load_bundle"))

            kernel = VerificationKernel(_config(samples=2))
            for command in COMMAND_TABLE:
                for arguments in COMMAND_ARGUMENTS.get(command, [{}]):
                    before = {name: mock.call_count for name, mock in mocks.items()}
                    kernel.run(command, **arguments)
                    for name, mock in mocks.items():
                        if mock.call_count > before[name]:
                            callers[name].add(command)

        for name, command in CHECKER_COMMANDS.items():
            assert callers[name] == {command}, name


class TestVerificationKernel:
    """VerificationKernelのテスト"""

    def setup_method(self):
        """テスト前の準備"""
        self.config = _config()
        self.kernel = VerificationKernel(self.config)

    def teardown_method(self):
        """テスト後の後片付け"""
        self.kernel.close()

    def test_initialization_with_defaults(self):
        """デフォルト設定での初期化を確認"""
        kernel = VerificationKernel(_config())

        assert kernel.storage is not None
        assert kernel.csv_storage is not None
        assert kernel.executor is None

    def test_injected_storage(self):
        """注入したストレージが使われることを確認"""
        storage = MagicMock()
        storage.save.return_value = "-"
        kernel = VerificationKernel(self.config, storage=storage)

        assert kernel.save({"passed": True}) == "-"
        storage.save.assert_called_once_with({"passed": True}, "-")

    def test_unknown_command(self):
        """未知のコマンドでValueErrorが発生することを確認"""
        with pytest.raises(ValueError, match="未知のコマンド"):
            self.kernel.run("sm destroy")

    def test_sm_check_envelope(self):
        """sm check のレポートに共通フィールドがそろうことを確認"""
        report = self.kernel.run("sm check")

        assert report["command"] == "sm check"
        assert report["schema_version"] == SCHEMA_VERSION
        assert report["version"] == __version__
        assert report["rng"] == RNG_NAME
        assert report["seed"] == 7
        assert report["config"] == self.config.echo()
        assert report["target"] == "cocycle"
        assert len(report["checks"]) == 4
        assert report["passed"] is True
        for stats in report["checks"].values():
            assert {"max", "mean", "p99", "count", "passed"} <= set(stats)

    def test_sm_check_unknown_target(self):
        """未知の検証対象でValueErrorが発生することを確認"""
        with pytest.raises(ValueError, match="検証対象"):
            self.kernel.run("sm check", target="triangle")

    def test_report_deterministic(self):
        """同じ設定で同じバイト列のレポートになることを確認"""
        first = render_json(self.kernel.run("sm check"))
        second = render_json(VerificationKernel(_config()).run("sm check"))

        assert first == second

    def test_parallel_report_matches_sequential(self):
        """並列評価でもレポートが変わらないことを確認"""
        with VerificationKernel(_config(threads=3)) as parallel:
            assert isinstance(parallel.executor, ThreadPoolExecutor)
            report = parallel.run("sm check")

        assert render_json(report) == render_json(self.kernel.run("sm check"))

    def test_checker_error_propagates(self):
        """検証器の例外がログ後に再送出されることを確認"""
        with patch(
            "src.string2g.core.cover_check", side_effect=RuntimeError("boom")
        ), patch("src.string2g.core.log_error") as mock_log_error:
            with pytest.raises(RuntimeError, match="boom"):
                self.kernel.run("cover check")

        mock_log_error.assert_called_once()

    def test_save_to_directory(self):
        """ディレクトリ指定でテンプレート名のファイルに保存されることを確認"""
        report = self.kernel.run("sm check")
        with tempfile.TemporaryDirectory() as temp_dir:
            path = self.kernel.save(report, temp_dir)

            assert path == os.path.join(temp_dir, "sm-check-7.json")
            with open(path, "r", encoding="utf-8") as f:
                assert f.read() == render_json(report)

    def test_sds_verify_csv_auto(self):
        """CSV出力先autoで結果ディレクトリに残差が保存されることを確認"""

        def fake_sds_verify(config, solution, seed, executor, rows):
            rows.extend([{"x": 1.0, "residual": 0.0}, {"x": 2.0, "residual": 0.0}])
            return _passing_report()

        with tempfile.TemporaryDirectory() as temp_dir:
            config = _config()
            config.storage = StorageConfig(result_dir=temp_dir)
            kernel = VerificationKernel(config)
            with patch("src.string2g.core.sds_verify", side_effect=fake_sds_verify):
                report = kernel.run("sds verify", solution=1, csv_path="auto")

            expected = os.path.join(temp_dir, "sds-verify-7-residuals.csv")
            assert report["csv"] == expected
            assert len(kernel.csv_storage.read(expected)) == 2

    def test_close_shuts_down_executor(self):
        """closeで実行器が停止されることを確認"""
        kernel = VerificationKernel(_config(threads=2))
        assert kernel.executor is not None

        kernel.close()

        assert kernel._executor is None


class TestFactory:
    """ファクトリ関数のテスト"""

    def test_create_with_config(self):
        """設定を渡した場合にそのまま使われることを確認"""
        config = _config()
        kernel = create_verification_kernel(config=config)

        assert isinstance(kernel, VerificationKernel)
        assert kernel.config is config

    def test_create_default(self):
        """デフォルトで設定が読み込まれることを確認"""
        with patch.dict(os.environ, {"STRING2G_THREADS": "1"}):
            kernel = create_verification_kernel()

        assert kernel.config.environment == "local"
