// Copyright 2026 The nilcert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// The nilcert command line. Exit codes: 0 success, 1 invalid input or
// transform failure, 2 usage, parse or IO error.

#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "nilcert/witness.hpp"

namespace nilcert {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitUsage = 2;

struct CliConfig {
  std::size_t max_nodes = kDefaultMaxNodes;
};

/// Reads NILCERT_MAX_NODES. Throws std::invalid_argument if it is set but
/// not a positive integer.
CliConfig config_from_env();

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_check(const std::string& path, std::ostream& out, std::ostream& err);
int cmd_demo(const std::string& name, const std::string& out_path,
             const std::optional<std::string>& log_path, const CliConfig& config, std::ostream& out,
             std::ostream& err);
int cmd_product(std::optional<Setting> setting, const std::string& problem_path,
                const std::string& p_path, const std::string& q_path,
                const std::optional<std::string>& m_expr, const std::string& out_path,
                const CliConfig& config, std::ostream& out, std::ostream& err);
int cmd_permute(const std::string& cert_path, const std::string& factors, const std::string& sigma,
                const std::string& out_path, const CliConfig& config, std::ostream& out,
                std::ostream& err);
int cmd_intersect(std::optional<Setting> setting, const std::string& p_path,
                  const std::string& q_path, const std::string& out_path, const CliConfig& config,
                  std::ostream& out, std::ostream& err);

}  // namespace nilcert
