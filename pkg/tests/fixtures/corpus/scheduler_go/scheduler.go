package scheduler

import (
	"errors"
	"fmt"
	"sort"
	"time"
)

const maxJobs = 64

// Job is a unit of scheduled work.
type Job struct {
	Name     string
	Priority int
	Interval time.Duration
	LastRun  time.Time
	Runs     int
}

type Scheduler struct {
	jobs    []*Job
	clock   func() time.Time
	skipped int
}

var ErrFull = errors.New("scheduler is full")

func New(clock func() time.Time) *Scheduler {
	return &Scheduler{clock: clock}
}

func (s *Scheduler) Add(name string, priority int, interval time.Duration) error {
	if len(s.jobs) >= maxJobs {
		return ErrFull
	}
	if interval <= 0 || name == "" {
		return fmt.Errorf("invalid job %q", name)
	}
	s.jobs = append(s.jobs, &Job{Name: name, Priority: priority, Interval: interval})
	return nil
}

func (s *Scheduler) Due() []*Job {
	now := s.clock()
	var due []*Job
	for _, job := range s.jobs {
		if job.LastRun.IsZero() || now.Sub(job.LastRun) >= job.Interval {
			due = append(due, job)
		}
	}
	sort.Slice(due, func(i, j int) bool {
		return due[i].Priority > due[j].Priority
	})
	return due
}

func (s *Scheduler) Tick(budget int) int {
	ran := 0
	for _, job := range s.Due() {
		if ran >= budget {
			s.skipped += 1
			continue
		}
		job.LastRun = s.clock()
		job.Runs += 1
		ran++
	}
	return ran
}

func (s *Scheduler) Load() float64 {
	if len(s.jobs) == 0 {
		return 0
	}
	total := 0
	for _, job := range s.jobs {
		total += job.Runs
	}
	return float64(total) / float64(len(s.jobs))
}

func (s *Scheduler) Remove(name string) bool {
	for i, job := range s.jobs {
		if job.Name == name {
			s.jobs = append(s.jobs[:i], s.jobs[i+1:]...)
			return true
		}
	}
	return false
}

func NextWindow(start time.Time, interval time.Duration, count int) time.Time {
	offset := interval * time.Duration(count)
	return start.Add(offset - interval/2)
}

func Describe(job *Job) string {
	return fmt.Sprintf("%s every %s (priority %d)", job.Name, job.Interval, job.Priority)
}
