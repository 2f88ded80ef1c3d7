#pragma once

#include <cstdint>
#include <queue>
#include <vector>

namespace macsel::desim {

/// Min-queue ordered by (time, insertion sequence); equal times pop in
/// insertion order so runs are reproducible.
template <class Payload>
class EventQueue {
public:
    struct Event {
        double time;
        std::uint64_t seq;
        Payload payload;
    };

    void push(double time, Payload p) { heap_.push(Event{time, next_++, std::move(p)}); }
    bool empty() const { return heap_.empty(); }
    std::size_t size() const { return heap_.size(); }
    const Event& top() const { return heap_.top(); }
    Event pop() {
        Event e = heap_.top();
        heap_.pop();
        return e;
    }

private:
    struct Later {
        bool operator()(const Event& a, const Event& b) const {
            if (a.time != b.time) return a.time > b.time;
            return a.seq > b.seq;
        }
    };
    std::priority_queue<Event, std::vector<Event>, Later> heap_;
    std::uint64_t next_ = 0;
};

}  // namespace macsel::desim
