#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fou::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCampaignFailed = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kOutputDirEnv = "FOU_OUTPUT_DIR";
inline constexpr const char* kResolvedConfigName = "resolved_config.toml";

// Runs one `fou` invocation; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fou::cli
