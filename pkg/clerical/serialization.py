# ========================================================= #
try:
    import orjson as json_lib
except ImportError:
    import json as json_lib
# ========================================================= #


def to_json(obj) -> str:
    """One line of JSON text. ``orjson`` returns bytes, the stdlib returns str"""
    _out = json_lib.dumps(obj)

    return _out.decode('utf-8') if isinstance(_out, bytes) else _out


def from_json(text):
    return json_lib.loads(text)


# ========================================================= #
