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
#ifndef BASSNET_CSV_HPP
#define BASSNET_CSV_HPP

#include "bassnet/model.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace bassnet
{

/// 17 significant digits, enough for a lossless round trip.
std::string format_number(double v);

/// Header row then one row per entry; every row must match the header width.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// Column "t" followed by every series of the trajectory.
void write_csv(const std::filesystem::path& path, const Trajectory& tr);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::vector<double> column(const std::string& name) const;
};

CsvTable read_csv(const std::filesystem::path& path);

} // namespace bassnet

#endif // BASSNET_CSV_HPP
