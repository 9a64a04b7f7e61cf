#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ferfreq {

// Expression classes with fixed ids: 1=happy, 2=sad, 3=sleepy, 4=surprised,
// 5=wink. Ids are stable because they are written into feature stores and
// model files.
enum class Emotion : std::uint8_t {
  kHappy = 1,
  kSad = 2,
  kSleepy = 3,
  kSurprised = 4,
  kWink = 5,
};

inline constexpr std::array<Emotion, 5> kAllEmotions = {
    Emotion::kHappy, Emotion::kSad, Emotion::kSleepy, Emotion::kSurprised,
    Emotion::kWink};

inline constexpr int emotion_id(Emotion e) { return static_cast<int>(e); }

inline constexpr std::string_view emotion_name(Emotion e) {
  switch (e) {
    case Emotion::kHappy: return "happy";
    case Emotion::kSad: return "sad";
    case Emotion::kSleepy: return "sleepy";
    case Emotion::kSurprised: return "surprised";
    case Emotion::kWink: return "wink";
  }
  return "invalid";
}

inline std::optional<Emotion> emotion_from_name(std::string_view name) {
  for (Emotion e : kAllEmotions) {
    if (emotion_name(e) == name) return e;
  }
  return std::nullopt;
}

inline std::optional<Emotion> emotion_from_id(int id) {
  if (id < 1 || id > 5) return std::nullopt;
  return static_cast<Emotion>(id);
}

}  // namespace ferfreq
