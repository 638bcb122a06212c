// Copyright 2026 The qgtsim Authors
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

#include "qgt/protocol/network.h"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace qgt {

std::string EndpointName(Endpoint e) {
  switch (e) {
    case Endpoint::kAlice: return "alice";
    case Endpoint::kBob: return "bob";
    case Endpoint::kMidpoint: return "midpoint";
  }
  return "?";
}

std::string MessageKindName(MessageKind k) {
  switch (k) {
    case MessageKind::kHeraldResult: return "herald_result";
    case MessageKind::kMidCircuitOutcome: return "mid_circuit_outcome";
    case MessageKind::kSyncReady: return "sync_ready";
    case MessageKind::kAbort: return "abort";
  }
  return "?";
}

const ClassicalMessage& Network::Send(ClassicalMessage msg, double now) {
  msg.send_time = now;
  msg.latency = latency_;
  const auto key = std::make_pair(int(msg.sender), int(msg.receiver));
  double t = now + latency_;
  auto it = last_delivery_.find(key);
  if (it != last_delivery_.end()) t = std::max(t, it->second);
  last_delivery_[key] = t;
  msg.delivery_time = t;
  log_.push_back(msg);
  auto& q = pending_[int(msg.receiver)];
  q.push_back(msg);
  std::stable_sort(q.begin(), q.end(),
                   [](const ClassicalMessage& a, const ClassicalMessage& b) {
                     return a.delivery_time < b.delivery_time;
                   });
  return log_.back();
}

std::vector<ClassicalMessage> Network::Deliver(Endpoint receiver, double t) {
  auto& q = pending_[int(receiver)];
  std::vector<ClassicalMessage> out;
  auto it = q.begin();
  while (it != q.end() && it->delivery_time <= t) out.push_back(*it++);
  q.erase(q.begin(), it);
  return out;
}

double Network::NextDelivery(Endpoint receiver) const {
  const auto& q = pending_[int(receiver)];
  return q.empty() ? std::numeric_limits<double>::infinity()
                   : q.front().delivery_time;
}

std::vector<double> SynchronizeInit(const std::vector<double>& d) {
  if (d.empty()) return {};
  const double longest = *std::max_element(d.begin(), d.end());
  std::vector<double> out;
  for (double v : d) {
    if (v < 0.0) throw std::invalid_argument("init duration must be >= 0");
    out.push_back(longest - v);
  }
  return out;
}

}  // namespace qgt
