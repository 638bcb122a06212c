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

#ifndef QGT_PROTOCOL_NETWORK_H_
#define QGT_PROTOCOL_NETWORK_H_

#include <array>
#include <map>
#include <string>
#include <vector>

namespace qgt {

enum class Endpoint { kAlice = 0, kBob = 1, kMidpoint = 2 };
enum class MessageKind { kHeraldResult, kMidCircuitOutcome, kSyncReady, kAbort };

std::string EndpointName(Endpoint e);
std::string MessageKindName(MessageKind k);

struct ClassicalMessage {
  MessageKind kind = MessageKind::kSyncReady;
  Endpoint sender = Endpoint::kAlice;
  Endpoint receiver = Endpoint::kBob;
  std::string name;        // bit name for outcomes
  std::vector<int> payload;
  double latency = 0.0;
  double send_time = 0.0;
  double delivery_time = 0.0;
};

// Lossless point-to-point channels with FIFO delivery per (sender, receiver).
class Network {
 public:
  explicit Network(double latency = 0.0) : latency_(latency) {}

  // Stamps send and delivery times and queues the message.
  const ClassicalMessage& Send(ClassicalMessage msg, double now);
  // Messages for receiver delivered at or before time t, in delivery order;
  // removed from the queue.
  std::vector<ClassicalMessage> Deliver(Endpoint receiver, double t);
  // Earliest pending delivery time for receiver, or +inf.
  double NextDelivery(Endpoint receiver) const;
  const std::vector<ClassicalMessage>& log() const { return log_; }
  double latency() const { return latency_; }

 private:
  double latency_;
  std::map<std::pair<int, int>, double> last_delivery_;
  std::array<std::vector<ClassicalMessage>, 3> pending_;
  std::vector<ClassicalMessage> log_;
};

// Start offsets so that every node finishes its init at the same time: the
// faster node is delayed by the difference.
std::vector<double> SynchronizeInit(const std::vector<double>& init_durations);

}  // namespace qgt

#endif  // QGT_PROTOCOL_NETWORK_H_
