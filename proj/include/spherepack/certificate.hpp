#pragma once

#include "json.hpp"

#include <string>
#include <vector>

namespace spherepack {

enum class Status { verified, refuted, inconclusive };

std::string to_string(Status s);

struct CertificateStep {
    std::string statement;
    std::string method;  // "exact" or "numerical"
    std::string bound;   // rendered quantity that was checked
    bool passed = false;
};

struct Certificate {
    std::string claim;
    Status status = Status::inconclusive;
    std::vector<CertificateStep> log;
    nlohmann::json details = nlohmann::json::object();

    void add(std::string statement, std::string method, std::string bound, bool passed);
    // verified iff every step passed; refuted if any step failed.
    void finalize();
    nlohmann::json to_json() const;
};

} // namespace spherepack
