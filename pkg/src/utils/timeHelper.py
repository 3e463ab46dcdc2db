from datetime import datetime, timezone

SECONDS_PER_DAY = 86400.0


def to_iso(ts):
    """
    Render UTC epoch seconds as ISO-8601 with a trailing Z.
    """
    moment = datetime.fromtimestamp(ts, tz=timezone.utc)
    if moment.microsecond:
        return moment.strftime("%Y-%m-%dT%H:%M:%S.%fZ")
    return moment.strftime("%Y-%m-%dT%H:%M:%SZ")


def from_iso(text):
    """
    Parse an ISO-8601 timestamp into UTC epoch seconds.

    Naive timestamps are read as UTC.

    Args:
        text (str): Timestamp such as "2026-03-29T14:30:00Z".

    Returns:
        float: Seconds since the epoch.
    """
    if text.endswith("Z"):
        text = text[:-1] + "+00:00"
    moment = datetime.fromisoformat(text)
    if moment.tzinfo is None:
        moment = moment.replace(tzinfo=timezone.utc)
    return moment.timestamp()


def utc_date(ts):
    return datetime.fromtimestamp(ts, tz=timezone.utc).strftime("%Y-%m-%d")


def age_days(created_at, now):
    return (now - created_at) / SECONDS_PER_DAY


def now_ts():
    return datetime.now(timezone.utc).timestamp()
