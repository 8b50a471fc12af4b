from typing import Callable, Dict, List, Optional, TypeVar

T = TypeVar("T")


class NamedRegistry:
    """
    Maps names to registered objects. Registration order is kept so that
    iteration over the registry is deterministic.
    """

    def __init__(self, kind: str):
        self._kind = kind
        self._entries: Dict[str, object] = {}

    def register(self, register_name: str, entry: T) -> T:
        if register_name in self._entries:
            raise ValueError(f"Duplicate {self._kind} name {register_name}")
        self._entries[register_name] = entry
        return entry

    def register_fn(self, register_name: str, build: Callable[[Callable], T]):
        """
        Decorator form: `build` turns the decorated function into the stored
        entry.
        """

        def wrap(fn: Callable):
            self.register(register_name, build(fn))
            return fn

        return wrap

    def search(self, name: str) -> Optional[object]:
        return self._entries.get(name, None)

    def names(self) -> List[str]:
        return list(self._entries.keys())

    def __len__(self) -> int:
        return len(self._entries)
