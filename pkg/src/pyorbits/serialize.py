from __future__ import annotations

import inspect
from fractions import Fraction
from typing import Any, ClassVar, Type, TypeVar, cast

import orjson
import yaml
from mashumaro.config import ADD_DIALECT_SUPPORT, BaseConfig
from mashumaro.dialect import Dialect
from mashumaro.exceptions import InvalidFieldValue
from mashumaro.mixins.dict import DataClassDictMixin
from mashumaro.types import SerializableType

TYPES: dict[str, Type[DataClassSerializeMixin]] = {}

T = TypeVar("T", bound="DataClassSerializeMixin")


class OrjsonDialect(Dialect):
    serialization_strategy = {  # noqa: RUF012
        Fraction: {"serialize": str, "deserialize": Fraction},
    }


YamlLoader = getattr(yaml, "CSafeLoader", yaml.SafeLoader)
YamlDumper = getattr(yaml, "CDumper", yaml.Dumper)


TYPE_KEY = "__type"
"""Key used to store/read DataClassSerializeMixin type during
(de)serialization."""

BIG_INT_LIMIT = 2**53
"""Integers at or above this magnitude are written as decimal strings so
that JSON readers with double-only numbers keep them exact."""


def big_int_to_wire(value: int) -> int | str:
    if -BIG_INT_LIMIT < value < BIG_INT_LIMIT:
        return value
    return str(value)


def big_int_from_wire(value: int | str) -> int:
    return int(value)


class DataClassSerializeMixin(DataClassDictMixin, SerializableType):
    __slots__ = ()

    __mashumaro_dialect: ClassVar[Type[Dialect] | None] = None

    class Config(BaseConfig):
        serialization_strategy = {  # noqa: RUF012
            Fraction: {"serialize": str, "deserialize": Fraction},
        }
        code_generation_options = [ADD_DIALECT_SUPPORT]  # type: ignore   # noqa: RUF012

    def __post_serialize__(self, d: dict[str, Any]) -> dict[str, Any]:
        return {TYPE_KEY: self.__class__.__name__, **d}

    def _serialize(self) -> dict[str, Any]:
        if DataClassSerializeMixin.__mashumaro_dialect is not None:
            return self.to_dict(dialect=DataClassSerializeMixin.__mashumaro_dialect)
        else:
            return self.to_dict()

    @classmethod
    def _deserialize(cls: Type[T], value: dict[str, Any]) -> T:
        class_name = value.get(TYPE_KEY)

        if isinstance(class_name, str):
            clazz = TYPES.get(class_name, None)
        else:
            clazz = cls

        if clazz is None:
            raise ValueError(f"Unknown class name: {class_name}")

        value = {k: v for k, v in value.items() if k != TYPE_KEY}

        if DataClassSerializeMixin.__mashumaro_dialect is not None:
            return cast(
                T,
                clazz.from_dict(value, dialect=DataClassSerializeMixin.__mashumaro_dialect),
            )
        else:
            return cast(T, clazz.from_dict(value))

    def __init_subclass__(cls, **kwargs: Any):
        if TYPES.get(cls.__name__) is not None:
            new_module = inspect.getmodule(cls)
            old_module = inspect.getmodule(TYPES[cls.__name__])

            if new_module is not old_module:
                raise ValueError(
                    f"DataClassSerializeMixin subclass <{cls.__name__}> is already defined "
                    f"in {old_module!s}. Please use a different name."
                )

        TYPES[cls.__name__] = cls
        return super().__init_subclass__(**kwargs)

    def as_dict(self, mashumaro_dialect: Type[Dialect] | None = None) -> dict[str, Any]:
        """Serialize this object to a dictionary.

        Args:
            mashumaro_dialect (Dialect, optional): The Mashumaro dialect to use for serialization.

        Returns:
            dict[str, Any]: The serialized object.
        """
        DataClassSerializeMixin.__mashumaro_dialect = mashumaro_dialect

        try:
            ret = self._serialize()
        finally:
            DataClassSerializeMixin.__mashumaro_dialect = None

        return ret

    @classmethod
    def as_obj(
        cls: Type[T],
        value: dict[str, Any],
        *,
        mashumaro_dialect: Type[Dialect] | None = None,
    ) -> T:
        """Deserialize a dictionary to an object.

        Args:
            value (dict[str, Any]): The serialized object.
            mashumaro_dialect (Dialect, optional): The Mashumaro dialect to use for deserialization.

        Returns:
            T: The deserialized object.
        """
        DataClassSerializeMixin.__mashumaro_dialect = mashumaro_dialect

        try:
            ret = cls._deserialize(value)
        finally:
            DataClassSerializeMixin.__mashumaro_dialect = None

        return ret

    def to_jsonb(self, *, indent: bool = False) -> bytes:
        """Serialize this object to JSON (as bytes).

        Args:
            indent (bool, optional): If True, the JSON will be indented. Defaults to False.

        Returns:
            bytes: The serialized object.
        """
        option = orjson.OPT_INDENT_2 if indent else None
        return orjson.dumps(self.as_dict(mashumaro_dialect=OrjsonDialect), option=option)

    def to_json(self, *, indent: bool = False) -> str:
        """Serialize this object to JSON (as a string)."""
        return self.to_jsonb(indent=indent).decode(encoding="utf-8")

    @classmethod
    def from_json(cls: Type[T], value: bytes | str) -> T:
        """Deserialize this object from JSON (as bytes or str)."""
        return cls.as_obj(orjson.loads(value), mashumaro_dialect=OrjsonDialect)

    def to_yaml(self) -> str:
        """Serialize this object to YAML (as a string)."""
        return yaml.dump(
            self.as_dict(),
            Dumper=YamlDumper,
            sort_keys=False,
        )

    @classmethod
    def from_yaml(cls: Type[T], value: str | bytes) -> T:
        """Deserialize this object from YAML (as a string or bytes)."""
        return cls.as_obj(yaml.load(value, Loader=YamlLoader) or {})


def unwrap_invalid_field_exception(exc: InvalidFieldValue) -> tuple[str, BaseException]:
    """Takes InvalidFieldValue exception and returns a tuple of a path to the
    nested field that caused the first non InvalidFieldValue exception as well
    as the actual exception object."""
    path = exc.field_name
    out_exc: BaseException = exc

    while out_exc.__context__ is not None:
        out_exc = out_exc.__context__
        if isinstance(out_exc, InvalidFieldValue):
            path += f".{out_exc.field_name}"
        else:
            break

    return path, out_exc
