// Copyright 2026 The erbox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string_view>

#include "erbox/box_io.hpp"
#include "erbox/boxes.hpp"
#include "erbox/commbounds.hpp"
#include "erbox/infotheory.hpp"
#include "erbox/linalg.hpp"
#include "erbox/qstate.hpp"

namespace erbox {

inline constexpr std::string_view kVersion = "1.0.0";

}  // namespace erbox
