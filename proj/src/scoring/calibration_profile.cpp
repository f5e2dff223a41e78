#include "neusv/scoring/calibration_profile.hpp"

#include <string>

#include "neusv/error.hpp"

namespace neusv::scoring {

const EcdfDistribution& CalibrationProfile::distribution(EvaluationMode m) const {
    auto it = ecdf.find(m);
    if (it == ecdf.end()) {
        throw Error(ErrorCode::Schema, "calibration profile '" + version + "' has no distribution for mode " +
                                           std::string(to_string(m)));
    }
    return it->second;
}

} // namespace neusv::scoring
