from importlib import resources as importlib_resources

import pytest

from coref import default_lexicon, load_lexicon


@pytest.fixture(scope="session")
def lex():
    return default_lexicon()


@pytest.fixture(scope="session")
def fixture_resources(tmp_path_factory):
    """Resource directory with census-format name files covering the worked
    examples (John, Fred, George, ...) plus the packaged tables."""
    directory = tmp_path_factory.mktemp("resources")
    (directory / "male_names.txt").write_text(
        "# census format: name freq cum_freq rank\n"
        "JOHN 3.271 3.271 1\n"
        "FRED 0.290 28.355 69\n"
        "GEORGE 0.927 11.773 16\n"
        "DAVID 2.363 8.447 6\n"
        "LAWRENCE 0.299 27.187 63\n"
        "VICTOR 0.128 42.100 150\n"
        "THOMAS 1.380 12.000 10\n"
        "HENRY 0.350 30.000 70\n"
        "LESLIE 0.051 60.000 300\n",
        encoding="utf-8")
    (directory / "female_names.txt").write_text(
        "MARY 2.629 2.629 1\n"
        "ALICE 0.340 20.000 51\n"
        "SUSAN 0.794 10.000 20\n"
        "LAURA 0.323 22.000 60\n"
        "NANCY 0.669 12.000 30\n"
        "LESLIE 0.149 40.000 200\n",
        encoding="utf-8")
    base = importlib_resources.files("coref").joinpath("resources")
    for name in ("titles.tsv", "pronouns.tsv", "copulas.txt"):
        (directory / name).write_text(base.joinpath(name).read_text(encoding="utf-8"),
                                      encoding="utf-8")
    return directory


@pytest.fixture(scope="session")
def fixture_lex(fixture_resources):
    return load_lexicon(fixture_resources)
