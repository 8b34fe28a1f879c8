import inspect
import logging
import sys
import time

import progressbar
from decorator import decorate

from .config import config

config.register(
    "logging_level",
    description="Set the default logging level.",
    default=logging.INFO,
    onchange=lambda level: logger.setLevel(level, context="trussalg"),
)


class StatusLogger:
    """
    StatusLogger is a thin wrapper around `logging.Logger` used throughout
    trussalg. On top of the standard logging methods it supports nested
    "scopes" (named phases of a computation, such as the certification of a
    coequalizer), caveats collected within a scope (for example, that a law
    was checked on a random sample of a symbolic domain rather than
    exhaustively), and progress bars for long sweeps.

    Instances proxy the methods of the `logging.Logger` for the calling
    module, so that:

    >>> logger.info('validated heap H4')

    logs under `trussalg.heaps` when called from that module.
    """

    def __init__(self):
        self.__scopes = []

        handler = LoggingHandler()
        self.setLevel(config.logging_level, context="trussalg")
        root = self.__get_logger_instance(context="trussalg")
        root.addHandler(handler)
        root.propagate = False

        self._progress_bar = None

    @property
    def disabled(self):
        return self.__get_logger_instance().disabled

    @disabled.setter
    def disabled(self, disabled):
        self.__get_logger_instance().disabled = disabled

    def _scope_enter(self, name, timed=False, extra=None):
        if config.logging_level < logging.INFO:
            print(
                "\t" * len(self.__scopes) + f"Entering scope: {name}",
                file=sys.stderr,
            )
        props = {"name": name, "caveats": []}
        if timed:
            props["time"] = time.time()
        if extra is not None:
            props["extra"] = extra
        self.__scopes.append(props)

    def _scope_exit(self, success=True):
        if self._progress_bar is not None:
            self.progress(100, complete=True)
        props = self.__scopes.pop()
        if "time" in props:
            self.info(
                f"{'Complete' if success else 'Failed'} after {self.__get_time(time.time() - props['time'])}."
                + (f" CAVEATS: {'; '.join(props['caveats'])}." if props["caveats"] else "")
            )
        elif props["caveats"] and not self.__scopes:
            self.warning(f"CAVEATS: {'; '.join(props['caveats'])}.")
        if self.__scopes:
            # Caveats bubble up, so that outer scopes (and reports) see them.
            self.__scopes[-1]["caveats"].extend(props["caveats"])
        if config.logging_level < logging.INFO:
            print(
                "\t" * len(self.__scopes) + f"Exited scope: {props['name']}",
                file=sys.stderr,
            )

    @staticmethod
    def __get_time(seconds):
        m, s = divmod(seconds, 60)
        h, m = divmod(m, 60)
        if h > 0:
            return f"{h:.0f} hrs, {m:.0f} min"
        if m > 0:
            return f"{m:.0f} min, {s:.0f} sec"
        return f"{s:.2f} sec"

    def caveat(self, caveat):
        """
        Record a caveat against the innermost scope, or emit it as a warning
        when no scope is open.
        """
        if not self.__scopes:
            self.warning(f"CAVEAT: {caveat}")
        elif caveat not in self.__scopes[-1]["caveats"]:
            self.__scopes[-1]["caveats"].append(caveat)

    @property
    def current_scopes(self):
        """list<str>: The names of the open scopes, outermost first."""
        return [scope["name"] for scope in self.__scopes]

    @property
    def current_scope_props(self):
        if not self.__scopes:
            return None
        return self.__scopes[-1]

    def __get_progress_bar(self):
        if self._progress_bar is None:
            prefix = ": ".join(self.current_scopes)
            self._progress_bar = progressbar.ProgressBar(
                widgets=[
                    prefix + ": " if prefix else "",
                    progressbar.widgets.Bar(),
                    progressbar.widgets.Timer(format=" %(elapsed)s"),
                ],
                redirect_stderr=True,
                max_value=100,
                fd=sys.stderr,
            ).start()
        return self._progress_bar

    def progress(self, progress=None, complete=False):
        """
        Set the current progress (a percentage), showing a progress bar if one
        is not already displayed. Progress bars are only shown at the INFO
        level or more verbose, and only while a scope is open.
        """
        complete = complete or self.current_scope_props is None
        if config.logging_level <= logging.INFO and sys.stderr.isatty():
            self.__get_progress_bar().update(progress)
            if complete:
                self.__get_progress_bar().finish(end=None)
                self._progress_bar = None

    # Logging emulation

    def __get_logger_instance(self, context=None):
        if context is None:
            try:
                caller = inspect.stack()[2]
                context = inspect.getmodule(caller.frame).__name__
            except:  # pylint: disable=bare-except
                context = "trussalg"
        if context != "trussalg" and not context.startswith("trussalg."):
            context = f"trussalg.external.{context}"
        return logging.getLogger(context)

    def __getattr__(self, name):
        return getattr(self.__get_logger_instance(), name)

    def setLevel(self, level, context=None):
        """
        `Logger.setLevel`, with an additional `context` to target a specific
        logger in the `trussalg` hierarchy.
        """
        self.__get_logger_instance(context).setLevel(level)


# pylint: disable-next=abstract-method
class LoggingHandler(logging.Handler):
    """
    Renders trussalg log records on stderr, prefixed by the open scopes.
    """

    def __init__(self, level=logging.NOTSET):
        logging.Handler.__init__(self, level=level)
        self.setFormatter(
            logging.Formatter(
                "%(levelname)s: %(name)s (%(funcName)s:%(lineno)s): %(message)s"
            )
        )

    def handle(self, record):
        try:
            scopes = logger.current_scopes
        except:  # pylint: disable=bare-except
            scopes = []

        if config.logging_level < logging.INFO:
            text = "\t" * len(scopes) + self.format(record)
        else:
            prefix = ": ".join(scopes) + ": " if scopes else ""
            text = prefix + record.getMessage()
        sys.stderr.write(text + "\n")
        sys.stderr.flush()


def logging_scope(name, *wargs, **wkwargs):
    """
    A decorator that runs the decorated function within a new logging scope
    called `name`. Additional arguments are passed to
    `StatusLogger._scope_enter`; currently `timed` and `extra` are supported.
    """

    def logging_scope(func, *args, **kwargs):
        logger._scope_enter(name, *wargs, **wkwargs)
        success = True
        try:
            return func(*args, **kwargs)
        except Exception:  # pylint: disable=broad-exception-caught
            success = False
            raise
        finally:
            logger._scope_exit(success)

    return lambda func: decorate(func, logging_scope)


logger = StatusLogger()
