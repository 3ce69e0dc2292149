#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
コマンドラインインターフェース

すべての検証器をサブコマンドとして公開する string2g コマンドです。
終了コードは合格で0、チェック不合格で1、使い方・設定の誤りで2です。
"""

import logging
import sys
from typing import Any, Callable, Dict, Optional

import click

from ._version import __version__
from .cocycles import COCYCLE_KINDS
from .config import get_config
from .core import SM_TARGETS, VerificationKernel
from .fields import SOLUTIONS
from .twogroup import TWO_GROUP_LAWS
from .utils import log_error, setup_console_logging, setup_logging

EXIT_PASSED = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

_COMMON_OPTIONS = (
    click.option(
        "--seed", type=click.IntRange(min=0), default=None, help="乱数シード"
    ),
    click.option(
        "--samples", type=click.IntRange(min=1), default=None, help="サンプル数"
    ),
    click.option("--tol", type=float, default=None, help="許容誤差"),
    click.option(
        "--h", "h", type=float, default=None, help="有限差分のステップ幅"
    ),
    click.option("--k", "k", type=float, default=None, help="μ₃の定数k"),
    click.option(
        "--output", type=str, default=None, help="出力先（ファイル・ディレクトリ・-）"
    ),
    click.option(
        "--format",
        "output_format",
        type=click.Choice(["json", "text"]),
        default=None,
        help="出力形式",
    ),
    click.option(
        "--config",
        "config_file",
        type=click.Path(exists=True, dir_okay=False),
        default=None,
        help="フラットなYAML設定ファイル",
    ),
    click.option(
        "--threads", type=click.IntRange(min=1), default=None, help="並列スレッド数"
    ),
    click.option("--debug", is_flag=True, help="デバッグログを出力"),
)


def common_options(func: Callable[..., Any]) -> Callable[..., Any]:
    """全サブコマンド共通のオプションを付与"""
    for option in reversed(_COMMON_OPTIONS):
        func = option(func)
    return func


def _overrides(
    options: Dict[str, Any], samples_key: str = "samples"
) -> Dict[str, Any]:
    return {
        "seed": options.get("seed"),
        samples_key: options.get("samples"),
        "tol": options.get("tol"),
        "h": options.get("h"),
        "k": options.get("k"),
        "output": options.get("output"),
        "format": options.get("output_format"),
        "threads": options.get("threads"),
        "debug": options.get("debug") or None,
    }


def execute(
    command: str,
    options: Dict[str, Any],
    samples_key: str = "samples",
    **arguments: Any,
) -> None:
    """
    設定を組み立ててコマンドを実行し、レポートを1回だけ出力

    Args:
        command: コマンド名
        options: 共通オプション
        samples_key: --samples を割り当てる設定キー
        arguments: コマンド固有の引数

    Raises:
        click.UsageError: 設定・入力が不正な場合（終了コード2）
    """
    try:
        config = get_config(
            "local", options.get("config_file"), _overrides(options, samples_key)
        )
    except (ValueError, OSError) as e:
        raise click.UsageError(f"設定エラー: {e}") from e

    setup_logging(config.storage, logging.DEBUG if config.debug else logging.INFO)
    if config.debug:
        setup_console_logging(logging.DEBUG)

    try:
        with VerificationKernel(config) as kernel:
            report = kernel.run(command, **arguments)
            kernel.save(report)
    except ValueError as e:
        raise click.UsageError(str(e)) from e
    except Exception as e:
        log_error(f"予期しないエラーが発生しました: {e}", e)
        click.echo(f"予期しないエラーが発生しました: {e}", err=True)
        sys.exit(EXIT_FAILED)

    sys.exit(EXIT_PASSED if report["passed"] else EXIT_FAILED)


@click.group(invoke_without_command=True)
@click.version_option(__version__, prog_name="string2g")
@click.pass_context
def cli(ctx: click.Context) -> None:
    """ストリング2群の検証カーネル"""
    if ctx.invoked_subcommand is None:
        click.echo(ctx.get_help(), err=True)
        ctx.exit(EXIT_USAGE)


@cli.group()
def cover() -> None:
    """単体的被覆とS³の被覆"""


@cover.command("build")
@common_options
def cover_build(**options: Any) -> None:
    """S³の3パッチ被覆を構成"""
    execute("cover build", options)


@cover.command("inspect")
@common_options
def cover_inspect(**options: Any) -> None:
    """SU(2)の基本パッチを記述"""
    execute("cover inspect", options)


@cover.command("check")
@common_options
def cover_check(**options: Any) -> None:
    """単体的被覆の整合性を検証"""
    execute("cover check", options)


@cli.group()
def sm() -> None:
    """Segal–Mitchisonコホモロジー"""


@sm.command("check")
@click.option(
    "--target",
    type=click.Choice(list(SM_TARGETS)),
    default="cocycle",
    show_default=True,
)
@common_options
def sm_check(target: str, **options: Any) -> None:
    """コサイクル条件または二重複体を検証"""
    execute("sm check", options, target=target)


@cli.group()
def twogroup() -> None:
    """弱ストリング2群"""


@twogroup.command("check")
@click.option(
    "--law",
    type=click.Choice(list(TWO_GROUP_LAWS)),
    default="pentagon",
    show_default=True,
)
@common_options
def twogroup_check(law: str, **options: Any) -> None:
    """2群の公理を検証"""
    execute("twogroup check", options, law=law)


@cli.group()
def cocycle() -> None:
    """Čech・Deligneコサイクル"""


@cocycle.command("validate")
@click.option("--kind", type=click.Choice(list(COCYCLE_KINDS)), default=None)
@click.option(
    "--in",
    "input_path",
    type=click.Path(exists=True, dir_okay=False),
    required=True,
    help="コサイクルバンドル（JSON）",
)
@common_options
def cocycle_validate(kind: Optional[str], input_path: str, **options: Any) -> None:
    """JSONバンドルのコサイクルを検証"""
    execute("cocycle validate", options, path=input_path, kind=kind)


@cli.group()
def diff() -> None:
    """弦2群の微分"""


@diff.command("demo")
@common_options
def diff_demo(**options: Any) -> None:
    """降下データから弦リー2代数を復元"""
    execute("diff demo", options)


@cli.group()
def linfty() -> None:
    """2項L∞代数と高次ゲージ場"""


@linfty.command("check")
@click.option(
    "--algebra",
    type=click.Choice(["su2", "spin4", "u1"]),
    default="su2",
    show_default=True,
)
@common_options
def linfty_check(algebra: str, **options: Any) -> None:
    """ホモトピーJacobi関係式とゲージ共変性を検証"""
    execute("linfty check", options, algebra=algebra)


@cli.group()
def sds() -> None:
    """自己双対弦"""


@sds.command("verify")
@click.option(
    "--solution",
    type=click.Choice([str(s) for s in SOLUTIONS]),
    default="1",
    show_default=True,
)
@click.option(
    "--csv",
    "csv_path",
    type=str,
    default=None,
    help="点ごとの残差のCSV出力先（autoなら結果ディレクトリ）",
)
@common_options
def sds_verify(solution: str, csv_path: Optional[str], **options: Any) -> None:
    """自己双対弦の解を検証"""
    execute(
        "sds verify",
        options,
        samples_key="sds_samples",
        solution=int(solution),
        csv_path=csv_path,
    )


def main() -> None:
    """エントリポイント"""
    cli(prog_name="string2g")


if __name__ == "__main__":
    main()
