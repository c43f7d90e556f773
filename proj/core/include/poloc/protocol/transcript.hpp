#pragma once

#include <string>
#include <vector>

#include "poloc/protocol/messages.hpp"
#include "poloc/protocol/rsu.hpp"

namespace poloc::protocol {

// Debug record of a message exchange: every message as annotated fields plus
// the hex of its wire encoding. Serialized as a JSON array of steps.
class Transcript {
 public:
  explicit Transcript(crypto::GroupParams params) : params_(std::move(params)) {}

  void initial_request(RsuId to, const InitialRequest& req);
  void authorized(RsuId from, const AuthorizedMessage& msg);
  void checkin(RsuId to, const CheckinMessage& msg);
  void rejected(RsuId by, Status status);
  void note(const std::string& text);

  std::size_t size() const { return steps_.size(); }
  std::string to_json() const;
  // One line per step, for terminals.
  std::string to_text() const;

 private:
  struct Step {
    std::string json;  // serialized object
    std::string text;
  };
  crypto::GroupParams params_;
  std::vector<Step> steps_;
};

}  // namespace poloc::protocol
