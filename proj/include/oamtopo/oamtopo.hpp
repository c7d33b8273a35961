// SPDX-License-Identifier: Apache-2.0
//
// oamtopo - reconfigurable antenna array topologies for OAM beam links
// Copyright (C) 2026 oamtopo contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef OAMTOPO_OAMTOPO_HPP
#define OAMTOPO_OAMTOPO_HPP

#include "oamtopo/channel.hpp"
#include "oamtopo/common.hpp"
#include "oamtopo/geometry.hpp"
#include "oamtopo/metrics.hpp"
#include "oamtopo/numerics.hpp"
#include "oamtopo/optimizer.hpp"
#include "oamtopo/reconfig.hpp"
#include "oamtopo/transceiver.hpp"

#endif // OAMTOPO_OAMTOPO_HPP
