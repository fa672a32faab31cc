"""
Diagnostics on stderr and optional PostHog exception tracking
"""
import sys
from typing import Any, Dict, Optional

from posthog import Posthog

_verbose = False
posthog: Optional[Posthog] = None


def set_verbose(flag: bool):
    global _verbose
    _verbose = bool(flag)


def diag(*params):
    """print() to stderr, only in verbose mode."""
    if _verbose:
        print(*params, file=sys.stderr, flush=True)


def init_tracking(api_key: Optional[str], host: Optional[str] = None) -> Optional[Posthog]:
    global posthog
    if api_key:
        posthog = Posthog(api_key, host=host)
        diag(f"PostHog initialized for exception tracking: {host}")
    else:
        posthog = None
        diag("PostHog API key not set. Exception tracking disabled.")
    return posthog


def track_exception(exc: BaseException, properties: Optional[Dict[str, Any]] = None):
    if not posthog:
        return
    try:
        posthog.capture_exception(exc, distinct_id="qcatalan-cli", properties=properties or {})
    except Exception as e:
        # tracking must never change the outcome of a run
        print(f"Failed to track exception in PostHog: {e}", file=sys.stderr)


def shutdown_tracking():
    if posthog:
        try:
            posthog.shutdown()
        except Exception as e:
            print(f"Failed to flush PostHog events: {e}", file=sys.stderr)
