#pragma once

#include <string>

#include "lpmahler/harness.hpp"
#include "lpmahler/sliding.hpp"

namespace lpm {

/// Body file format:
///   {"vertices": [[x,y],...], "symmetric": false}
///   {"half_vertices": [[x,y],...], "symmetric": true}
Body body_from_json_text(const std::string& text);
std::string body_to_json_text(const Body& body);
Body read_body_file(const std::string& path);
void write_body_file(const Body& body, const std::string& path);

std::string report_to_json_text(const VerifyReport& report);
std::string reduce_chain_to_json_text(const ReduceChain& chain);

}  // namespace lpm
