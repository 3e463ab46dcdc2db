import re
from config import MIN_TOKEN_LENGTH

_TOKEN_SPLIT = re.compile(r"[^0-9a-z]+")


def tokenize(text):
    """
    Split text into lowercase alphanumeric tokens.

    Tokens shorter than MIN_TOKEN_LENGTH are dropped. Duplicates are kept
    so callers can decide whether they need a list or a set.

    Args:
        text (str): Free text, may be empty or None.

    Returns:
        list: Tokens in order of appearance.
    """
    if not text:
        return []
    return [tok for tok in _TOKEN_SPLIT.split(text.lower()) if len(tok) >= MIN_TOKEN_LENGTH]


def token_set(text):
    return set(tokenize(text))


def normalize_keywords(keywords):
    """
    Lowercase, split and deduplicate a keyword collection.

    Args:
        keywords (Iterable[str]): Raw keywords, possibly multi-word.

    Returns:
        frozenset: The normalized keyword tokens.
    """
    result = set()
    for keyword in keywords or ():
        result.update(tokenize(keyword))
    return frozenset(result)


def jaccard(a, b, empty=0.0):
    """
    Jaccard similarity of two token sets.

    Args:
        a (Iterable[str]): First token collection.
        b (Iterable[str]): Second token collection.
        empty (float): Value returned when both sets are empty.

    Returns:
        float: |a & b| / |a | b|.
    """
    a, b = set(a), set(b)
    union = a | b
    if not union:
        return empty
    return len(a & b) / len(union)


def truncate(text, limit):
    # Hard cut, no ellipsis
    text = text or ""
    return text if len(text) <= limit else text[:limit]
