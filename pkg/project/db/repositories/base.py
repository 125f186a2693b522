from abc import ABC, abstractmethod
from typing import Any, Callable, Generic, Iterable, List, Optional, Type, TypeVar

from pydantic import BaseModel

ModelType = TypeVar("ModelType", bound=BaseModel)
Condition = Callable[[Any], bool]


class BaseRepository(ABC, Generic[ModelType]):
    """
    Abstract Base Class for record repositories.

    This class provides a standard query interface over an in-memory
    collection of pydantic records. It is designed to be inherited by
    specific repositories for each model.
    """

    def __init__(self, records: Iterable[ModelType] = ()) -> None:
        """
        Initializes the BaseRepository.

        :param records: initial records, kept in insertion order.
        """
        self.records: List[ModelType] = list(records)

    @property
    @abstractmethod
    def model(self) -> Type[ModelType]:
        """Record model."""
        raise NotImplementedError

    def _get_attr(self, record: ModelType, attr: str) -> Any:
        """
        Getting a record attribute by name.

        :param record: record to read.
        :param attr: attribute or property name.
        :return: attribute value.
        """
        return getattr(record, attr)

    def _where_condition(self, **kwargs: Any) -> Optional[Condition]:
        """Getting a predicate for the specified fields."""
        conditions: List[Condition] = []
        for attr, value in kwargs.items():
            if "__lte" in attr:
                attr = attr.replace("__lte", "")
                conditions.append(
                    lambda record, a=attr, v=value: self._get_attr(record, a) <= v,
                )
            elif "__gte" in attr:
                attr = attr.replace("__gte", "")
                conditions.append(
                    lambda record, a=attr, v=value: self._get_attr(record, a) >= v,
                )
            elif "__in" in attr:
                attr = attr.replace("__in", "")
                conditions.append(
                    lambda record, a=attr, v=value: self._get_attr(record, a) in v,
                )
            else:
                conditions.append(
                    lambda record, a=attr, v=value: self._get_attr(record, a) == v,
                )
        if not conditions:
            return None
        return lambda record: all(condition(record) for condition in conditions)

    def _select_where(self, **kwargs: Any) -> List[ModelType]:
        """Getting the records matching the filters."""
        condition = self._where_condition(**kwargs)
        if condition is None:
            return list(self.records)
        return [record for record in self.records if condition(record)]

    def find_one_by(self, **kwargs: Any) -> Optional[ModelType]:
        """
        Search for one record by specified filters.

        :param kwargs: field filters.
        :raises LookupError: more than one record matches.
        :return: the record or None.
        """
        found = self._select_where(**kwargs)
        if len(found) > 1:
            raise LookupError(f"{len(found)} {self.model.__name__} records match {kwargs}")
        return found[0] if found else None

    def find_all_by(
        self,
        offset: Optional[int] = None,
        limit: Optional[int] = None,
        order_by: Optional[Callable[[ModelType], Any]] = None,
        **kwargs: Any,
    ) -> List[ModelType]:
        """
        Search for all records by specified filters.

        :param offset: records to skip.
        :param limit: maximum number of records.
        :param order_by: sort key; insertion order when omitted.
        :param kwargs: field filters with optional ``__lte``/``__gte``/``__in``.
        :return: matching records.
        """
        found = self._select_where(**kwargs)
        if order_by is not None:
            found.sort(key=order_by)
        if offset is not None:
            found = found[offset:]
        if limit is not None:
            found = found[:limit]
        return found

    def find_first(self, **kwargs: Any) -> Optional[ModelType]:
        found = self._select_where(**kwargs)
        return found[0] if found else None

    def count(self, **kwargs: Any) -> int:
        return len(self._select_where(**kwargs))

    def create(self, **kwargs: Any) -> ModelType:
        instance = self.model(**kwargs)
        self.records.append(instance)
        return instance
