import logging

import pytest

from trussalg.utils.debug import logger, logging_scope


@logging_scope("Outer")
def outer(inner_caveat=None):
    logger.caveat("outer caveat")
    inner(inner_caveat)
    return list(logger.current_scope_props["caveats"])


@logging_scope("Inner")
def inner(caveat=None):
    if caveat:
        logger.caveat(caveat)
        logger.caveat(caveat)
    return logger.current_scopes


@logging_scope("Failing")
def failing():
    raise ValueError("boom")


class TestScopes:
    def test_caveats_bubble_up(self):
        assert outer("inner caveat") == ["outer caveat", "inner caveat"]
        assert logger.current_scopes == []

    def test_nested_names(self):
        assert inner() == ["Inner"]

    def test_scope_closes_on_error(self):
        with pytest.raises(ValueError):
            failing()
        assert logger.current_scope_props is None

    def test_caveat_outside_scope(self, mocker):
        warning = mocker.patch.object(logging.Logger, "warning")
        logger.caveat("unscoped")
        warning.assert_called_once_with("CAVEAT: unscoped")


class TestLogging:
    def test_messages_are_prefixed_by_scope(self, capsys):
        @logging_scope("Certifying")
        def certify():
            logger.info("done")

        certify()
        assert "Certifying: done" in capsys.readouterr().err

    def test_external_loggers(self):
        assert logger.name == f"trussalg.external.{__name__}"

    def test_progress_without_terminal(self, mocker):
        bar = mocker.patch("progressbar.ProgressBar")
        logger.progress(50)
        bar.assert_not_called()
