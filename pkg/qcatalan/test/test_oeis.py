import httpx
import pytest

from ..oeis import cache_path, oeis_lookup, parse_response, query_string
from ..utils.config import Settings
from ..utils.dependencies import OeisParseError


@pytest.fixture
def settings(tmp_path) -> Settings:
    return Settings(oeis_cache_dir=tmp_path / "cache")


def serve(body: str, calls: list, status: int = 200) -> httpx.MockTransport:
    def handler(request: httpx.Request) -> httpx.Response:
        calls.append(request)
        return httpx.Response(status, text=body)
    return httpx.MockTransport(handler)


def test_query_string():
    assert query_string([1, 2, 5, 7]) == "1,2,5,7"
    assert query_string([-3, 0]) == "-3,0"


def test_parse_object_form(fixtures_dir):
    matches = parse_response((fixtures_dir / "oeis_pentagonal.json").read_text())
    assert [m.id for m in matches] == ["A001318"]
    assert matches[0].name.startswith("Generalized pentagonal numbers")


def test_parse_list_form(fixtures_dir):
    matches = parse_response((fixtures_dir / "oeis_jacobsthal.json").read_text())
    assert [m.id for m in matches] == ["A001045", "A152046"]


def test_parse_no_results(fixtures_dir):
    assert parse_response((fixtures_dir / "oeis_none.json").read_text()) == []
    assert parse_response("null") == []


@pytest.mark.parametrize("raw", ["<html>busy</html>", "42", '[{"name": "no number"}]'])
def test_parse_errors_keep_the_body(raw):
    with pytest.raises(OeisParseError) as exc_info:
        parse_response(raw)
    assert exc_info.value.raw == raw


def test_lookup_fetches_then_uses_the_cache(settings, fixtures_dir):
    body = (fixtures_dir / "oeis_jacobsthal.json").read_text()
    calls = []
    result = oeis_lookup([0, 1, 1, 3, 5, 11, 21], settings, transport=serve(body, calls))
    assert result["success"] and not result["cached"]
    assert result["data"][0].id == "A001045"
    assert calls[0].url.params["q"] == "0,1,1,3,5,11,21"
    assert calls[0].url.params["fmt"] == "json"
    assert cache_path(settings.cache_dir(), result["query"]).read_text() == body

    offline = settings.model_copy(update={"oeis_offline": True})
    again = oeis_lookup([0, 1, 1, 3, 5, 11, 21], offline, transport=serve("", calls))
    assert again["cached"]
    assert len(calls) == 1


def test_offline_with_cold_cache_is_skipped(settings):
    offline = settings.model_copy(update={"oeis_offline": True})
    result = oeis_lookup([1, 2, 3], offline)
    assert result == {"success": False, "skipped": True, "error": "offline and no cached response", "query": "1,2,3"}


def test_disabled_lookup(settings):
    disabled = settings.model_copy(update={"oeis_enabled": False})
    assert oeis_lookup([1], disabled)["skipped"]


def test_network_failure_is_soft(settings):
    def handler(request):
        raise httpx.ConnectError("no route to host", request=request)

    result = oeis_lookup([1, 3, 5], settings, transport=httpx.MockTransport(handler))
    assert result["success"] is False
    assert "no route to host" in result["error"]
    assert not cache_path(settings.cache_dir(), "1,3,5").exists()


def test_server_error_is_soft(settings):
    result = oeis_lookup([2, 4], settings, transport=serve("oops", [], status=503))
    assert result["skipped"]
    assert not cache_path(settings.cache_dir(), "2,4").exists()


def test_malformed_body_is_not_cached(settings):
    with pytest.raises(OeisParseError):
        oeis_lookup([9, 9], settings, transport=serve("not json", []))
    assert not cache_path(settings.cache_dir(), "9,9").exists()
