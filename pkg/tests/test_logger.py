from app.config.settings import settings
from app.services.logger import get_logger, setup_logger


def test_default_level_hides_debug(monkeypatch, capfd):
    monkeypatch.setattr(settings, "log_level", "WARNING")
    monkeypatch.setattr(settings, "singlink_log", False)
    setup_logger()
    logger = get_logger("tests")
    logger.debug("скрытое сообщение")
    logger.info("скрытое сообщение")
    logger.warning("видимое сообщение")
    err = capfd.readouterr().err
    assert "видимое сообщение" in err
    assert "скрытое сообщение" not in err


def test_singlink_log_enables_debug(monkeypatch, capfd):
    monkeypatch.setattr(settings, "singlink_log", True)
    setup_logger()
    get_logger("tests").debug("трассировка стадии")
    assert "трассировка стадии" in capfd.readouterr().err
    monkeypatch.setattr(settings, "singlink_log", False)
    setup_logger()
