"""
OEIS search client with an on-disk cache of raw response bodies.

Lookups only annotate results: network trouble is a soft failure reported in
the returned dict, never an exception.
"""
import hashlib
import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import httpx

from .utils.config import Settings
from .utils.dependencies import OeisParseError
from .utils.pydantic_models import OeisMatch
from .utils.tracking import diag


def query_string(terms: Sequence[int]) -> str:
    return ",".join(str(int(t)) for t in terms)


def cache_path(cache_dir: Path, query: str) -> Path:
    digest = hashlib.sha256(query.encode("utf-8")).hexdigest()
    return cache_dir / f"{digest}.json"


def parse_response(raw: str) -> List[OeisMatch]:
    """
    Parse an OEIS fmt=json body. Both the older object form ({"results": [...]})
    and the bare list form are accepted; "no results" may come back as null.
    """
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as e:
        raise OeisParseError(f"OEIS response is not JSON: {e}", raw=raw)
    if data is None:
        return []
    if isinstance(data, dict):
        results = data.get("results") or []
    elif isinstance(data, list):
        results = data
    else:
        raise OeisParseError(f"unexpected OEIS response type {type(data).__name__}", raw=raw)
    matches = []
    for entry in results:
        if not isinstance(entry, dict) or "number" not in entry:
            raise OeisParseError("OEIS result without a sequence number", raw=raw)
        matches.append(OeisMatch(id=f"A{int(entry['number']):06d}", name=str(entry.get("name", ""))))
    return matches


def _read_cache(path: Path) -> Optional[str]:
    try:
        return path.read_text(encoding="utf-8")
    except FileNotFoundError:
        return None
    except OSError as e:
        print(f"Could not read OEIS cache file {path}: {e}", file=sys.stderr)
        return None


def _write_cache(path: Path, raw: str):
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(raw, encoding="utf-8")
    except OSError as e:
        # a read-only cache only costs a refetch next time
        print(f"Could not write OEIS cache file {path}: {e}", file=sys.stderr)


def _fetch(settings: Settings, query: str, transport: Optional[httpx.BaseTransport]) -> Dict[str, Any]:
    try:
        with httpx.Client(timeout=settings.oeis_timeout, transport=transport) as client:
            response = client.get(settings.oeis_endpoint, params={"q": query, "fmt": "json"})
            response.raise_for_status()
            return {"success": True, "data": response.text}
    except httpx.HTTPError as e:
        print(f"OEIS lookup for {query} failed: {e}", file=sys.stderr)
        return {"success": False, "error": str(e)}


def oeis_lookup(
    terms: Sequence[int],
    settings: Optional[Settings] = None,
    transport: Optional[httpx.BaseTransport] = None,
) -> Dict[str, Any]:
    """
    Look up a list of terms on the OEIS.

    Args:
        terms: the sequence terms to search for
        settings: OEIS endpoint, cache directory, timeout and enabled/offline flags
        transport: optional httpx transport (tests pass a MockTransport)

    Returns:
        {"success": True, "data": [OeisMatch, ...], "cached": bool, "query": str} on success,
        {"success": False, "skipped": True, "error": str, "query": str} when the lookup was skipped or failed.

    Raises:
        OeisParseError: the response body (cached or fresh) is malformed; the raw body is kept on the error
    """
    settings = settings or Settings()
    query = query_string(terms)
    if not settings.oeis_enabled:
        return {"success": False, "skipped": True, "error": "OEIS lookups are disabled", "query": query}

    path = cache_path(settings.cache_dir(), query)
    raw = _read_cache(path)
    if raw is not None:
        diag(f"oeis_lookup(): cache hit for {query}")
        return {"success": True, "data": parse_response(raw), "cached": True, "query": query}

    if settings.oeis_offline:
        return {"success": False, "skipped": True, "error": "offline and no cached response", "query": query}

    diag(f"oeis_lookup(): querying {settings.oeis_endpoint} for {query}")
    fetched = _fetch(settings, query, transport)
    if not fetched["success"]:
        return {"success": False, "skipped": True, "error": fetched["error"], "query": query}
    matches = parse_response(fetched["data"])
    _write_cache(path, fetched["data"])
    return {"success": True, "data": matches, "cached": False, "query": query}
