#include <math.h>
#include <stdio.h>
#include <stdlib.h>

#define MAX_POINTS 256

typedef struct {
    double x;
    double y;
} point;

typedef struct {
    point items[MAX_POINTS];
    int count;
} polygon;

static double square(double v) {
    return v * v;
}

double distance(point a, point b) {
    double dx = a.x - b.x;
    double dy = a.y - b.y;
    return sqrt(square(dx) + square(dy));
}

int polygon_add(polygon *poly, double x, double y) {
    /* refuse points once the buffer is full */
    if (poly->count >= MAX_POINTS) {
        return -1;
    }
    poly->items[poly->count].x = x;
    poly->items[poly->count].y = y;
    poly->count += 1;
    return poly->count;
}

double perimeter(const polygon *poly) {
    double total = 0.0;
    int i;
    for (i = 0; i < poly->count; i++) {
        int j = (i + 1) % poly->count;
        total += distance(poly->items[i], poly->items[j]);
    }
    return total;
}

double area(const polygon *poly) {
    double sum = 0.0;
    int i;
    if (poly->count < 3) {
        return 0.0;
    }
    for (i = 0; i < poly->count; i++) {
        int j = (i + 1) % poly->count;
        sum += poly->items[i].x * poly->items[j].y;
        sum -= poly->items[j].x * poly->items[i].y;
    }
    return fabs(sum) / 2.0;
}

point centroid(const polygon *poly) {
    point c = {0.0, 0.0};
    int i;
    if (poly->count == 0) {
        return c;
    }
    for (i = 0; i < poly->count; i++) {
        c.x += poly->items[i].x;
        c.y += poly->items[i].y;
    }
    c.x /= poly->count;
    c.y /= poly->count;
    return c;
}

int contains(const polygon *poly, point p) {
    int inside = 0;
    int i, j;
    for (i = 0, j = poly->count - 1; i < poly->count; j = i++) {
        point a = poly->items[i];
        point b = poly->items[j];
        if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) {
            inside = !inside;
        }
    }
    return inside;
}

int main(void) {
    polygon poly;
    poly.count = 0;
    polygon_add(&poly, 0.0, 0.0);
    polygon_add(&poly, 4.0, 0.0);
    polygon_add(&poly, 4.0, 3.0);
    printf("perimeter %.2f\n", perimeter(&poly));
    printf("area %.2f\n", area(&poly));
    return 0;
}
