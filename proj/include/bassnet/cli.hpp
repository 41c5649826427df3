/*
 * Copyright (C) 2026 The bassnet authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef BASSNET_CLI_HPP
#define BASSNET_CLI_HPP

#include "bassnet/model.hpp"

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace bassnet
{

enum ExitCode : int { kExitOk = 0, kExitInvalid = 1, kExitNumerical = 2 };

/**
 * Network description used by the simulate and master subcommands:
 *   {"family": "complete" | "circle", "M": 8, "p": 0.02, "q": 0.1}
 *   {"family": "kgroup", "M": 40, "spec": {"K": .., "a": [..], "p": [..], "Q": [[..]]}}
 *   {"family": "explicit", "p": [..], "edges": [[from, to, weight], ...]}
 */
NetworkInstance network_from_json(const nlohmann::json& j);

/// args excludes the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cli_main(int argc, char** argv);

} // namespace bassnet

#endif // BASSNET_CLI_HPP
