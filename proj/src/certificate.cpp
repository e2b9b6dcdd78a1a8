#include "spherepack/certificate.hpp"

namespace spherepack {

std::string to_string(Status s) {
    switch (s) {
    case Status::verified: return "verified";
    case Status::refuted: return "refuted";
    case Status::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

void Certificate::add(std::string statement, std::string method, std::string bound, bool passed) {
    log.push_back({std::move(statement), std::move(method), std::move(bound), passed});
}

void Certificate::finalize() {
    if (log.empty()) {
        status = Status::inconclusive;
        return;
    }
    status = Status::verified;
    for (auto& s : log)
        if (!s.passed) status = Status::refuted;
}

nlohmann::json Certificate::to_json() const {
    nlohmann::json steps = nlohmann::json::array();
    for (auto& s : log)
        steps.push_back({{"statement", s.statement}, {"method", s.method}, {"bound", s.bound}, {"passed", s.passed}});
    nlohmann::json j{{"claim", claim}, {"status", spherepack::to_string(status)}, {"log", steps}};
    if (!details.empty()) j["details"] = details;
    return j;
}

} // namespace spherepack
