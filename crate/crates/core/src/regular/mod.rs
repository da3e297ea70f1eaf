//! Regular (uniform cycle type) elements and the polycirculant survey.

mod search;
mod survey;

pub use search::{find_fpf_prime_power, find_regular, RegularElementReport};
pub use survey::{polycirculant_survey, survey_entry, survey_to_jsonl, SurveyOptions, SurveyRow, SurveyStatus};
