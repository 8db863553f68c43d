#pragma once

#include <functional>
#include <vector>

namespace isptb::tb {

// Broadcast port: publish delivers the item synchronously to every
// subscriber in subscription order. Zero subscribers is legal.
template <typename T>
class AnalysisPort {
public:
    using Callback = std::function<void(const T&)>;

    void subscribe(Callback cb) { subscribers_.push_back(std::move(cb)); }

    void publish(const T& item) const {
        for (const auto& cb : subscribers_) cb(item);
    }

    std::size_t subscriber_count() const { return subscribers_.size(); }

private:
    std::vector<Callback> subscribers_;
};

} // namespace isptb::tb
