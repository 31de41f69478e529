#!/usr/bin/env python3
"""
Performance benchmarking script: runs every verification suite at its
configured depth and compares wall time against the per-suite targets.
"""

import json
import os
import sys
import time
from typing import Any, Dict, List

import psutil

from src.config import load_settings
from src.oracle import SUITES, run_suite

BENCHMARK_FILE = "output/benchmark_results.json"


class PerformanceMonitor:
    """Monitor wall time and resident memory around one suite run."""

    def __init__(self):
        self.start_time = None
        self.start_memory = None
        self.peak_memory = 0

    def start(self):
        self.start_time = time.time()
        self.start_memory = psutil.Process().memory_info().rss / 1024 / 1024  # MB
        self.peak_memory = self.start_memory

    def update(self):
        current_memory = psutil.Process().memory_info().rss / 1024 / 1024  # MB
        self.peak_memory = max(self.peak_memory, current_memory)

    def get_stats(self) -> Dict[str, float]:
        elapsed = time.time() - self.start_time if self.start_time else 0
        return {
            "processing_time": elapsed,
            "memory_start_mb": self.start_memory,
            "memory_peak_mb": self.peak_memory,
            "memory_delta_mb": self.peak_memory - self.start_memory if self.start_memory else 0,
        }


def run_performance_test(name: str, settings) -> Dict[str, Any]:
    """Run one suite at its default depth under the monitor."""
    monitor = PerformanceMonitor()
    monitor.start()
    try:
        report = run_suite(name, settings=settings)
        monitor.update()
        stats = monitor.get_stats()
        target = settings.target_seconds.get(name, float("inf"))
        return {
            "suite": name,
            "success": report.passed,
            "depth": report.depth,
            "cases": report.cases_checked,
            "failures": len(report.failures),
            "findings": len(report.findings),
            "target_seconds": target,
            "within_target": stats["processing_time"] <= target,
            **stats,
        }
    except Exception as e:
        return {
            "suite": name,
            "success": False,
            "error": str(e),
            **monitor.get_stats(),
        }


def benchmark_system() -> List[Dict[str, Any]]:
    """Run every suite and save the results."""
    settings = load_settings()
    print("Binary Tree Kinship Toolkit - Performance Benchmarking")
    print("=" * 60)

    results = []
    for name in SUITES:
        print(f"\n{name}")
        print("-" * 40)
        result = run_performance_test(name, settings)
        results.append(result)
        if "error" in result:
            print(f"  error: {result['error']}")
            continue
        print(f"  depth {result['depth']}, {result['cases']} cases, {result['failures']} failures")
        print(f"  time: {result['processing_time']:.2f}s (target {result['target_seconds']:.0f}s)")
        print(f"  memory peak: {result['memory_peak_mb']:.1f}MB")
        print("  " + ("within target" if result["within_target"] else "OVER TARGET"))

    print("\nBENCHMARK SUMMARY")
    print("=" * 60)
    passed = [r for r in results if r.get("success")]
    fast = [r for r in results if r.get("within_target")]
    total_time = sum(r["processing_time"] for r in results)
    print(f"Suites passed: {len(passed)}/{len(results)}")
    print(f"Suites within time target: {len(fast)}/{len(results)}")
    print(f"Total time: {total_time:.2f}s")

    os.makedirs(os.path.dirname(BENCHMARK_FILE), exist_ok=True)
    with open(BENCHMARK_FILE, "w") as f:
        json.dump(
            {
                "timestamp": time.strftime("%Y-%m-%d %H:%M:%S"),
                "system_info": {
                    "cpu_count": psutil.cpu_count(),
                    "memory_gb": round(psutil.virtual_memory().total / 1024**3, 2),
                    "python_version": sys.version,
                },
                "results": results,
            },
            f,
            indent=2,
        )
    print(f"\nDetailed results saved to: {BENCHMARK_FILE}")
    return results


if __name__ == "__main__":
    benchmark_system()
