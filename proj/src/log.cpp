// Copyright 2026 The rqaoa-wireless Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#include "rqw/log.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>

namespace rqw {

namespace {

LogLevel initial_level() {
    const char* env = std::getenv("RQW_LOG");
    if (!env) return LogLevel::warning;
    const std::string v = env;
    if (v == "quiet") return LogLevel::quiet;
    if (v == "info") return LogLevel::info;
    return LogLevel::warning;
}

std::atomic<LogLevel>& level_ref() {
    static std::atomic<LogLevel> level{initial_level()};
    return level;
}

}  // namespace

void set_log_level(LogLevel level) { level_ref().store(level); }
LogLevel log_level() { return level_ref().load(); }

void log_warning(const std::string& message) {
    if (log_level() >= LogLevel::warning) std::cerr << "warning: " << message << '\n';
}

void log_info(const std::string& message) {
    if (log_level() >= LogLevel::info) std::cerr << message << '\n';
}

}  // namespace rqw
