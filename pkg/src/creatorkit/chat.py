"""Rule-based chat over the archive and headline services: keyword decision
tree for intent routing plus slot matching against the tag vocabulary.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from . import archive
from .errors import CreatorKitError, EmptyTitle
from .headline import score_headline

FIND_BY_TAG = "FindByTag"
TAG_STATS = "TagStats"
RATE_TITLE = "RateTitle"
HELP = "Help"

STATS_KEYWORDS = ("how many", "views", "shares", "comments", "stats")
FIND_KEYWORDS = ("videos about", "show", "find")

HELP_TEXT = (
    "I can help with the archive and with titles. Try:\n"
    '- "show videos about <tag>"\n'
    '- "how many views do <tag> videos get"\n'
    '- "rate my title: <your title>"\n'
    '- "help"'
)


@dataclass
class Intent:
    name: str
    slots: dict[str, str] = field(default_factory=dict)
    confidence: str = "matched"


def _match_tag(text: str, vocabulary) -> str | None:
    """Longest vocabulary tag appearing in the text (word-boundary match)."""
    best = None
    for tag in vocabulary:
        if re.search(rf"(?<![0-9a-z]){re.escape(tag.lower())}(?![0-9a-z])", text):
            if best is None or len(tag) > len(best) or (len(tag) == len(best) and tag < best):
                best = tag.lower()
    return best


def _extract_title(raw: str, lowered: str) -> str:
    if ":" in raw:
        return raw.split(":", 1)[1].strip()
    for kw in ("rate", "title"):
        pos = lowered.find(kw)
        if pos >= 0:
            candidate = raw[pos + len(kw) :].strip()
            if candidate:
                return candidate
    return ""


def parse_utterance(text: str, tag_vocabulary) -> Intent:
    """Deterministic keyword decision tree; the Help fallback absorbs
    anything that matches no rule."""
    raw = text.strip()
    lowered = raw.lower()
    if "rate" in lowered or "title" in lowered:
        title = _extract_title(raw, lowered)
        if title:
            return Intent(RATE_TITLE, {"title": title})
        return Intent(HELP, confidence="fallback")
    tag = _match_tag(lowered, tag_vocabulary)
    if any(kw in lowered for kw in STATS_KEYWORDS) and tag:
        if "shares" in lowered:
            metric = "shares"
        elif "comments" in lowered:
            metric = "comments"
        else:
            metric = "views"
        return Intent(TAG_STATS, {"tag": tag, "metric": metric})
    if any(kw in lowered for kw in FIND_KEYWORDS) and tag:
        return Intent(FIND_BY_TAG, {"tag": tag})
    return Intent(HELP, confidence="fallback")


def respond(intent: Intent, index, headline_model=None, embeddings=None) -> str:
    """Render an intent into a chat reply. Never raises: downstream failures
    become user-readable messages."""
    try:
        return _respond(intent, index, headline_model, embeddings)
    except CreatorKitError as exc:
        return f"Sorry, I could not do that: {exc}"
    except Exception:  # last-resort guard; the chat surface must not raise
        return "Sorry, something went wrong while handling that request."


def _format_number(x: float) -> str:
    return f"{x:g}"


def _respond(intent, index, headline_model, embeddings) -> str:
    if intent.name == TAG_STATS:
        stats = archive.tag_stats(index, intent.slots["tag"], intent.slots["metric"])
        return (
            f'{stats.metric} for tag "{stats.tag}": count {stats.count}, '
            f"mean {_format_number(stats.mean)}, median {_format_number(stats.median)}, "
            f"total {stats.total}"
        )
    if intent.name == FIND_BY_TAG:
        tag = intent.slots["tag"]
        records, suggestions = archive.query_by_tag(index, tag)
        if not records:
            msg = f'Sorry, I found no videos tagged "{tag}".'
            if suggestions:
                msg += " Did you mean: " + ", ".join(suggestions) + "?"
            return msg
        lines = [f'Found {len(records)} videos tagged "{tag}":']
        lines += [f"- {r.title}" for r in records[:10]]
        return "\n".join(lines)
    if intent.name == RATE_TITLE:
        if headline_model is None or embeddings is None:
            return "Sorry, the headline model is not loaded."
        try:
            score = score_headline(intent.slots["title"], headline_model, embeddings)
        except EmptyTitle:
            return "Sorry, that title has no words I can score."
        top = sorted(score.contributions, key=lambda tw: -tw[1])[:3]
        words = ", ".join(t for t, _ in top)
        return (
            f'Predicted popularity of "{intent.slots["title"]}": '
            f"{score.probability_popular:.2f}. Top contributing words: {words}."
        )
    return HELP_TEXT
