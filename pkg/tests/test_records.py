import pytest

from cohortkg.errors import ValidationError
from cohortkg.records import (
    ArmKind,
    CharacteristicValue,
    Count,
    MeanSd,
    MedianIqr,
    Percentage,
    StudyArmRecord,
    StudyRecord,
    SubsetRecord,
)

AGE = "http://semanticscience.org/resource/Age"
YEAR = "http://semanticscience.org/resource/Year"


def test_mean_sd_rejects_negative_sd():
    with pytest.raises(ValidationError):
        MeanSd(50.0, -1.0)


def test_median_iqr_ordering_enforced():
    MedianIqr(5.0, 1.0, 9.0)
    with pytest.raises(ValidationError):
        MedianIqr(5.0, 6.0, 9.0)
    with pytest.raises(ValidationError):
        MedianIqr(10.0, 1.0, 9.0)


def test_percentage_bounds():
    Percentage(0.0)
    Percentage(100.0)
    with pytest.raises(ValidationError):
        Percentage(130.0)
    with pytest.raises(ValidationError):
        Percentage(-0.1)


def test_count_non_negative():
    Count(0)
    with pytest.raises(ValidationError):
        Count(-1)


def test_continuous_statistic_requires_unit():
    with pytest.raises(ValidationError, match="unit"):
        CharacteristicValue(AGE, "Age", MeanSd(60.0, 5.0))
    CharacteristicValue(AGE, "Age", MeanSd(60.0, 5.0), unit=YEAR)
    CharacteristicValue(AGE, "Age", Percentage(40.0))  # no unit needed


def test_subset_needs_defining_pair():
    with pytest.raises(ValidationError):
        SubsetRecord("Empty", (), 10.0)


def test_arm_population_non_negative():
    with pytest.raises(ValidationError):
        StudyArmRecord("A", ArmKind.CONTROL, -5)


def test_study_needs_arm_and_unique_arm_ids():
    arm = StudyArmRecord("A", ArmKind.CONTROL, 10)
    with pytest.raises(ValidationError):
        StudyRecord("S", "title", ())
    with pytest.raises(ValidationError):
        StudyRecord("S", "title", (arm, arm))
    study = StudyRecord("S", "title", (arm,))
    assert study.cohort_size == 10


def test_identifier_pattern():
    with pytest.raises(ValidationError):
        StudyArmRecord("9bad id", ArmKind.CONTROL, 1)
    with pytest.raises(ValidationError):
        StudyRecord("has space", "t", (StudyArmRecord("A", ArmKind.CONTROL, 1),))
