"""
Fractrace CLI 메인 모듈
"""

import argparse
import sys
from typing import List, Optional

from fractrace.cli.commands import (
    capacitary_command,
    capacity_command,
    kernel_eval_command,
    kernel_validate_command,
    maximal_command,
    scaling_command,
    strichartz_command,
    suite_command,
    trace_command,
    wolff_command,
)
from fractrace.cli.commands.common import EXIT_ERROR
from fractrace.core.errors import FractraceError
from fractrace.experiments.kernel.suites import SUITES


def _global_options(nested: bool = False) -> argparse.ArgumentParser:
    """
    모든 명령이 받는 --seed, --out, --config

    하위 명령 쪽은 기본값을 두지 않아 최상위에서 준 값을 덮어쓰지 않습니다.
    """
    common = argparse.ArgumentParser(add_help=False)
    defaults = {"seed": 0, "out": None, "config": None}
    if nested:
        defaults = {key: argparse.SUPPRESS for key in defaults}
    common.add_argument("--seed", type=int, default=defaults["seed"], help="난수 시드 (기본: 0)")
    common.add_argument("--out", type=str, default=defaults["out"], help="결과 디렉토리 (기본: 설정의 output.dir)")
    common.add_argument("--config", type=str, default=defaults["config"], help="설정 파일 경로 (YAML 또는 JSON)")
    return common


def _exponent_options(parser: argparse.ArgumentParser, variants: List[str]) -> None:
    parser.add_argument("--variant", choices=variants, default=variants[0], help="작용소 변형")
    parser.add_argument("--p", type=float, default=2.0, help="지수 p (기본: 2)")
    parser.add_argument("--alpha", type=float, default=0.5, help="분수 지수 α (기본: 0.5)")


def _point_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--measure", type=str, required=True, help="측도 CSV (t,x1[,x2],w)")
    where = parser.add_mutually_exclusive_group(required=True)
    where.add_argument("--points", type=str, help="질의점 CSV (t,x1[,x2])")
    where.add_argument("--at-atoms", dest="at_atoms", action="store_true", help="원자 위치에서 평가")


def build_parser() -> argparse.ArgumentParser:
    common = _global_options(nested=True)
    parser = argparse.ArgumentParser(
        prog="fractrace",
        description="Fractrace - 분수 열 반군 퍼텐셜 이론 툴킷",
        parents=[_global_options()],
    )
    subparsers = parser.add_subparsers(dest="command", help="사용 가능한 명령어")

    # kernel 하위 명령 그룹
    kernel_parser = subparsers.add_parser("kernel", help="열 커널 K_t(x)")
    kernel_subparsers = kernel_parser.add_subparsers(dest="kernel_command", help="커널 명령")

    eval_parser = kernel_subparsers.add_parser("eval", help="K_t(x) 하나 평가", parents=[common])
    eval_parser.add_argument("--alpha", type=float, required=True)
    eval_parser.add_argument("--dim", type=int, default=1)
    eval_parser.add_argument("--t", type=float, required=True)
    eval_parser.add_argument("--x", type=str, required=True, help='좌표 "x1,..,xn"')
    eval_parser.add_argument("--tol", type=float, default=None, help="절대 허용오차")
    eval_parser.set_defaults(handler=kernel_eval_command)

    validate_parser = kernel_subparsers.add_parser("validate", help="커널 검증 스위트", parents=[common])
    validate_parser.add_argument("--alpha", type=float, required=True)
    validate_parser.add_argument("--dim", type=int, default=1)
    validate_parser.add_argument("--suite", choices=list(SUITES), required=True)
    validate_parser.set_defaults(handler=kernel_validate_command)

    # wolff 명령어
    wolff_parser = subparsers.add_parser("wolff", help="Wolff 퍼텐셜 (CSV t,x,value)", parents=[common])
    _exponent_options(wolff_parser, ["R", "S", "dyadic"])
    _point_options(wolff_parser)
    wolff_parser.add_argument("--rho", type=float, default=None, help="절단 반경 (기본: ∞)")
    wolff_parser.set_defaults(handler=wolff_command)

    # maximal 명령어
    maximal_parser = subparsers.add_parser("maximal", help="최대함수 (CSV t,x,value)", parents=[common])
    maximal_parser.add_argument("--variant", choices=["R", "spacetime", "centered", "dyadic"], default="R")
    maximal_parser.add_argument("--alpha", type=float, default=0.5)
    _point_options(maximal_parser)
    maximal_parser.add_argument("--g", type=str, default=None, help="원자별 g CSV (centered, dyadic)")
    maximal_parser.set_defaults(handler=maximal_command)

    # capacity 명령어
    capacity_parser = subparsers.add_parser("capacity", help="용량 괄호 (JSON)", parents=[common])
    capacity_parser.add_argument("target", choices=["ball", "file", "superlevel"])
    _exponent_options(capacity_parser, ["R", "S"])
    capacity_parser.add_argument("--r", type=float, default=1.0, help="공 반경")
    capacity_parser.add_argument("--radii", type=float, nargs="+", default=None, help="r 스윕")
    capacity_parser.add_argument("--set", type=str, default=None, help="표본 집합 CSV")
    capacity_parser.add_argument("--field", type=str, default=None, help="g 필드 (superlevel)")
    capacity_parser.add_argument("--level", type=float, default=1.0, help="초과 수준 λ (superlevel)")
    capacity_parser.add_argument("--grid", type=str, default=None, help='X 격자 "L,h,T,M"')
    capacity_parser.add_argument("--max-iter", dest="max_iter", type=int, default=None)
    capacity_parser.add_argument("--tol", type=float, default=None)
    capacity_parser.set_defaults(handler=capacity_command)

    # scaling 명령어
    scaling_parser = subparsers.add_parser("scaling", help="B_r 용량 기울기", parents=[common])
    _exponent_options(scaling_parser, ["R", "S"])
    scaling_parser.add_argument("--radii", type=float, nargs="+", default=None)
    scaling_parser.set_defaults(handler=scaling_command)

    # trace 명령어
    trace_parser = subparsers.add_parser("trace", help="추적 부등식 비율", parents=[common])
    _exponent_options(trace_parser, ["R", "S"])
    trace_parser.add_argument("--q", type=float, default=None, help="지수 q (기본: p)")
    trace_parser.add_argument("--measure", type=str, default="dirac", help='"file:<경로>" 또는 내장 family')
    trace_parser.add_argument("--trials", type=int, default=24)
    trace_parser.set_defaults(handler=trace_command)

    # strichartz 명령어
    strichartz_parser = subparsers.add_parser("strichartz", help="Strichartz 비율 스윕", parents=[common])
    strichartz_parser.add_argument("--alpha", type=float, default=0.5)
    strichartz_parser.add_argument("--p", type=float, default=1.5)
    strichartz_parser.add_argument("--dim", type=int, default=1)
    strichartz_parser.add_argument("--trials", type=int, default=12)
    strichartz_parser.set_defaults(handler=strichartz_command)

    # capacitary 명령어
    capacitary_parser = subparsers.add_parser("capacitary", help="초과집합 용량 부등식", parents=[common])
    capacitary_parser.add_argument("--alpha", type=float, default=0.5)
    capacitary_parser.add_argument("--p", type=float, default=1.5)
    capacitary_parser.add_argument("--trials", type=int, default=20, help="시드 수")
    capacitary_parser.set_defaults(handler=capacitary_command)

    # suite 명령어
    suite_parser = subparsers.add_parser("suite", help="전체 실험 파이프라인", parents=[common])
    suite_parser.add_argument("--stages", nargs="+", default=None, help="실행할 단계 (기본: 전체)")
    suite_parser.set_defaults(handler=suite_command)

    return parser


def main(argv: Optional[List[str]] = None) -> None:
    """CLI 메인 엔트리포인트"""
    parser = build_parser()
    args = parser.parse_args(argv)

    handler = getattr(args, "handler", None)

    if handler is None:
        parser.print_help()
        sys.exit(EXIT_ERROR)

    try:
        code = handler(args)
    except (FractraceError, ValueError, FileNotFoundError) as e:
        print(f"\n❌ {type(e).__name__}: {e}")
        sys.exit(EXIT_ERROR)

    sys.exit(code)


if __name__ == "__main__":
    main()
