"""
congruence-kit - exact invariants for weak d-congruence of 3-manifolds
Main entry point with logging, performance monitoring and error handling
"""

import argparse
import logging
import logging.handlers
import os
import sys
import time
from collections import defaultdict
from typing import List, Optional

import psutil

import config
from commands import common_options
from commands.burnside_cmd import setup_burnside_command
from commands.cupform import setup_cupform_command
from commands.distinguish import setup_distinguish_command
from commands.homology import setup_homology_command
from commands.link_cmd import setup_link_command
from commands.paper_check import setup_paper_check_command
from core.errors import CongruenceKitError, InputError
from utils.guards import get_guard_stats

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

logger = logging.getLogger(__name__)


def configure_logging(verbose: bool = False):
    """Root logger: rotating file (unless disabled) plus stderr; stdout is reserved for reports."""
    handlers: List[logging.Handler] = []
    if config.LOG_FILE:
        directory = os.path.dirname(config.LOG_FILE)
        try:
            if directory:
                os.makedirs(directory, exist_ok=True)
            handlers.append(logging.handlers.RotatingFileHandler(
                config.LOG_FILE,
                maxBytes=config.LOG_MAX_BYTES,
                backupCount=config.LOG_BACKUPS,
                encoding='utf-8',
            ))
        except OSError as e:
            print(f"⚠️ Cannot open log file {config.LOG_FILE}: {e}", file=sys.stderr)
    handlers.append(logging.StreamHandler(sys.stderr))

    level = logging.INFO if verbose else getattr(logging, config.LOG_LEVEL.upper(), logging.WARNING)
    logging.basicConfig(level=level, format=LOG_FORMAT, handlers=handlers, force=True)


class PerformanceMonitor:
    """Monitor command wall time and resource usage"""

    def __init__(self):
        self.command_times = defaultdict(list)
        self.start_time = time.time()

    def log_command_time(self, command_name: str, execution_time: float):
        self.command_times[command_name].append(execution_time)

    def get_memory_usage(self) -> dict:
        """Get current memory usage statistics"""
        process = psutil.Process()
        memory_info = process.memory_info()
        return {
            'rss_mb': memory_info.rss / 1024 / 1024,
            'vms_mb': memory_info.vms / 1024 / 1024,
            'percent': process.memory_percent()
        }

    def log_summary(self):
        """Log timings, memory and per-invariant stats; never part of the report."""
        memory = self.get_memory_usage()
        for command, times in self.command_times.items():
            logger.info(f"{command}: {sum(times):.3f}s")
        logger.info(f"Memory: {memory['rss_mb']:.1f}MB RSS ({memory['percent']:.1f}%)")
        if memory['rss_mb'] > 500:
            logger.warning(f"High memory usage: {memory['rss_mb']:.1f}MB")
        for name, stats in get_guard_stats().items():
            logger.info(f"  {name}: calls={stats['calls']}, errors={stats['errors']}, {stats['seconds']}s")


performance_monitor = PerformanceMonitor()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="congruence-kit",
        description="Exact invariants that can tell 3-manifolds apart up to weak d-congruence.",
    )
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True
    parent = common_options()

    setup_homology_command(subparsers, parent)
    setup_distinguish_command(subparsers, parent)
    setup_cupform_command(subparsers, parent)
    setup_burnside_command(subparsers, parent)
    setup_link_command(subparsers, parent)
    setup_paper_check_command(subparsers, parent)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Run one sub-command; returns the exit status (0 ok, 1 failure, 2 bad input)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)

    started = time.perf_counter()
    try:
        report = args.handler(args)
    except InputError as e:
        logger.error(f"❌ Input error: {e}")
        print(f"❌ {e}", file=sys.stderr)
        return 2
    except CongruenceKitError as e:
        logger.error(f"❌ {type(e).__name__}: {e}")
        print(f"❌ {e}", file=sys.stderr)
        return 1
    except Exception as e:
        logger.exception(f"Unexpected error in {args.command}: {e}")
        print(f"❌ Unexpected error: {e}", file=sys.stderr)
        return 1
    finally:
        performance_monitor.log_command_time(args.command, time.perf_counter() - started)
        performance_monitor.log_summary()

    print(report.render(args.json))
    return report.exit_status


if __name__ == "__main__":
    sys.exit(main())
